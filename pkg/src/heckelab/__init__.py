"""Exact models of the rank-one pro-p Hecke algebras, their blocks and module
theory, the chain-of-lines parameter map, and the windowed endomorphism DGA."""

from .gf import FieldCtx, FieldElt, field_arith, field_create, field_generator
from .torus import (
    CharOrbit,
    GroupAlgElt,
    GroupKind,
    TorusChar,
    TorusCtx,
    TorusElt,
    enumerate_characters,
    idempotent,
    lift_character,
    orbit_idempotent,
    orbit_partition,
    s0_twist,
)
from .hecke import (
    ExtWeylElt,
    HeckeElt,
    SupersingChar,
    SupersingModule,
    block_project,
    enumerate_supersingular,
    hecke_mul,
    is_central,
    weyl_mul,
)
from .models import (
    ModelMap,
    SphericalModule,
    build_gp_spherical,
    build_model,
    build_spherical,
    build_tilde_z,
    center_elements,
    freeness_check,
    os_resolution_check,
    verify_model,
)
from .fdmod import (
    AlgebraKind,
    DecompResult,
    FDModule,
    StableAlgebra,
    decompose,
    ext_S_specialized,
    ext_group,
    generator_test,
    infinite_pd_detect,
    shift,
    stable_endo_supersingular,
    stable_hom,
)
from .scheme import (
    ChainPoint,
    ChainScheme,
    SpecZPoint,
    L_map,
    build_scheme,
    correspondence_table,
    langlands_parameter,
    phi,
    phi_prime,
    singular_points,
)
from .dga import WindowHomElt, WindowSeq, degree0_check, dga_cohomology, dga_d, dga_mul
from .cli import RunConfig, emit, run

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
