from __future__ import annotations

import pytest

from heckelab.errors import VerificationFailure, WrongRegularity
from heckelab.gf import field_create
from heckelab.hecke import enumerate_supersingular, weyl
from heckelab.models import (
    GL2_NONREG,
    GL2_REG,
    PGL2_NONREG,
    SL2_SIGMA,
    Mat2,
    ModelMap,
    SphericalModule,
    all_models,
    build_gp_spherical,
    build_model,
    build_spherical,
    build_tilde_z,
    center_elements,
    freeness_check,
    os_resolution_check,
    verify_model,
)
from heckelab.rings import NodalLaurentPoly
from heckelab.torus import GroupKind, TorusCtx, orbit_partition, sign_character

CTXS = {}


def tctx(q):
    if q not in CTXS:
        p, e = {3: (3, 1), 5: (5, 1), 7: (7, 1), 9: (3, 2)}[q]
        CTXS[q] = TorusCtx(field_create(p, e), q)
    return CTXS[q]


def reg_orbit(kind, q, idx=0):
    return [o for o in orbit_partition(kind, q) if o.regular][idx]


def nonreg_orbit(kind, q, idx=0):
    return [o for o in orbit_partition(kind, q) if not o.regular][idx]


def test_gl2_regular_generator_images():
    t = tctx(5)
    mm = build_model(GroupKind.GL2, reg_orbit(GroupKind.GL2, 5), t)
    ctx = t.field
    # T_omega -> (0 Z; 1 0)
    tw = mm.images["tw"]
    assert tw.a[0][1] == NodalLaurentPoly.z_power(ctx, 1)
    assert tw.a[1][0] == NodalLaurentPoly.scalar(ctx, 1)
    assert tw.a[0][0].is_zero() and tw.a[1][1].is_zero()
    # T_s0 -> (0 X1; X2 Z^{-1} 0)
    ts0 = mm.images["ts0"]
    assert ts0.a[0][1] == NodalLaurentPoly.mono(ctx, 1, 1)
    assert ts0.a[1][0] == NodalLaurentPoly.mono(ctx, 2, 1, zexp=-1)


def test_affine_generator_images():
    t = tctx(5)
    mm = build_model(GroupKind.GL2, reg_orbit(GroupKind.GL2, 5), t, affine=True)
    ctx = t.field
    assert mm.images["ts0"].a[0][1] == NodalLaurentPoly.mono(ctx, 1, 1)
    assert mm.images["ts0"].a[1][0] == NodalLaurentPoly.mono(ctx, 2, 1)
    assert mm.images["ts1"].a[0][1] == NodalLaurentPoly.mono(ctx, 2, 1)


def test_pgl2_nonregular_ts0_image():
    t = tctx(5)
    mm = build_model(GroupKind.PGL2, nonreg_orbit(GroupKind.PGL2, 5), t)
    ctx = t.field
    ts0 = mm.images["ts0"]
    assert ts0.a[0][0].is_zero() and ts0.a[0][1].is_zero() and ts0.a[1][0].is_zero()
    assert ts0.a[1][1] == NodalLaurentPoly.scalar(ctx, ctx.neg_i(1))


def test_wrong_regularity_raises():
    t = tctx(5)
    with pytest.raises(WrongRegularity):
        build_model(GroupKind.GL2, nonreg_orbit(GroupKind.GL2, 5), t, affine=True)


def test_verify_model_passes_q5_all():
    t = tctx(5)
    for mm in all_models(t, GroupKind.GL2):
        assert verify_model(mm, Lmax=4)["pass"]
    for mm in all_models(t, GroupKind.SL2):
        assert verify_model(mm, Lmax=4)["pass"]
    for mm in all_models(t, GroupKind.PGL2):
        assert verify_model(mm, Lmax=4)["pass"]


def test_verify_model_q9_sample():
    t = tctx(9)
    orb = reg_orbit(GroupKind.GL2, 9)
    assert verify_model(build_model(GroupKind.GL2, orb, t), Lmax=4)["pass"]


def test_corrupted_model_fails():
    t = tctx(5)
    mm = build_model(GroupKind.GL2, reg_orbit(GroupKind.GL2, 5), t)
    ctx = t.field
    z0 = NodalLaurentPoly(ctx)
    bad = Mat2(ctx, [[z0, NodalLaurentPoly.z_power(ctx, 1)], [z0, z0]])
    mm.images["tw"] = bad
    with pytest.raises(VerificationFailure):
        verify_model(mm, Lmax=2)


def test_center_elements_gl2_regular():
    t = tctx(5)
    orb = reg_orbit(GroupKind.GL2, 5)
    cents = center_elements(GroupKind.GL2, orb, t)
    names = {name for name, _, _ in cents}
    assert names == {"X1", "X2", "Z"}
    for name, elt, img in cents:
        assert img.is_scalar()
        pol = img.a[0][0]
        if name == "X1":
            assert pol == NodalLaurentPoly.mono(t.field, 1, 1)
        elif name == "X2":
            assert pol == NodalLaurentPoly.mono(t.field, 2, 1)
        else:
            assert pol == NodalLaurentPoly.z_power(t.field, 1)


def test_center_elements_gl2_nonregular():
    t = tctx(5)
    orb = nonreg_orbit(GroupKind.GL2, 5)
    cents = center_elements(GroupKind.GL2, orb, t)
    by_name = {name: img for name, _, img in cents}
    assert by_name["X"].a[0][0] == NodalLaurentPoly.mono(t.field, 1, 1)
    assert by_name["Z"].a[0][0] == NodalLaurentPoly.z_power(t.field, 1)


def test_center_elements_sl2_regular_and_sigma():
    t = tctx(5)
    orbs = orbit_partition(GroupKind.SL2, 5)
    reg = next(o for o in orbs if o.regular)
    cents = center_elements(GroupKind.SL2, reg, t)
    by_name = {name: img for name, _, img in cents}
    # e1 T0T1 + e2 T1T0 -> X1^2 . Id
    assert by_name["C1"].a[0][0] == NodalLaurentPoly.mono(t.field, 1, 2)
    assert by_name["C2"].a[0][0] == NodalLaurentPoly.mono(t.field, 2, 2)
    sigma = sign_character(GroupKind.SL2, 5)
    sig_orb = next(o for o in orbs if sigma in o.members)
    (name, elt, img), = center_elements(GroupKind.SL2, sig_orb, t)
    want = NodalLaurentPoly.mono(t.field, 1, 2).add(NodalLaurentPoly.mono(t.field, 2, 2))
    assert img.a[0][0] == want  # (X1 + X2)^2 = X1^2 + X2^2


def test_spherical_specializations_sl2():
    t = tctx(5)
    orb = reg_orbit(GroupKind.SL2, 5)
    sph = build_spherical(GroupKind.SL2, orb, t)
    # at X1 = X2 = 0: chi_1 (+) chi_2, i.e. both reflection actions vanish
    fib = sph.specialize(0, 0)
    assert fib["ts0"] == [[0, 0], [0, 0]]
    assert fib["ts1"] == [[0, 0], [0, 0]]
    assert fib["e1"] == [[1, 0], [0, 0]]
    # at X1 = 0, X2 = lambda: T0 acts by (0 0; lambda 0)
    lam = 2
    fib = sph.specialize(0, lam)
    assert fib["ts0"] == [[0, 0], [lam, 0]]
    assert fib["ts1"] == [[0, lam], [0, 0]]


def test_gp_spherical_degree_zero_dies():
    t = tctx(5)
    orb = reg_orbit(GroupKind.GL2, 5)
    gp = build_gp_spherical(orb, t)
    assert gp.x_slice_dim(0) == 0
    assert gp.x_slice_dim(1) == 4
    plain = build_spherical(GroupKind.GL2, orb, t)
    assert plain.x_slice_dim(0) == 2


def test_freeness_check():
    t = tctx(5)
    assert freeness_check(t, 0)
    assert freeness_check(t, 1)
    assert freeness_check(t, 4)


def test_tilde_z_components():
    t = tctx(5)
    tz = build_tilde_z(t)
    rings = [ring for ring, _ in tz.components]
    assert rings == ["k[X]", "A", "A"]
    # every non-trivial component's lifted orbit is a regular GL2 orbit
    for ring, orb in tz.components[1:]:
        assert orb.regular


def test_os_resolution_check_q3():
    t = tctx(3)
    orb = reg_orbit(GroupKind.GL2, 3)
    census = enumerate_supersingular(t, GroupKind.GL2)
    mod = next(m for m in census.modules if m.orbit == orb)
    rep = os_resolution_check(t, orb, mod, mod.lam_idx, D=4)
    assert rep["pass"]
    assert rep["dims"]["boundary_image"] == rep["dims"]["ker_counit"]


def test_os_resolution_zero_module_trivial():
    t = tctx(3)
    orb = reg_orbit(GroupKind.GL2, 3)
    assert os_resolution_check(t, orb, None, 1, D=4)["pass"]


def test_os_resolution_small_D_raises():
    from heckelab.errors import TruncationTooSmall

    t = tctx(3)
    orb = reg_orbit(GroupKind.GL2, 3)
    with pytest.raises(TruncationTooSmall):
        os_resolution_check(t, orb, None, 1, D=1)


def test_gl2_span_parity_corner_structure():
    """Basis elements whose word length matches the omega power mod 2 map into
    the e1-corner subring; the others land in the off-corner columns."""
    from heckelab.hecke import weyl

    t = tctx(5)
    mm = build_model(GroupKind.GL2, reg_orbit(GroupKind.GL2, 5), t)
    e1 = mm.images["e1"]
    words = [()]
    for n in range(1, 7):
        words += [tuple((s + k) % 2 for k in range(n)) for s in (0, 1)]
    for w in words:
        for a in (-2, -1, 0, 1, 2):
            img = e1.mul(mm.image_of_weyl(weyl(GroupKind.GL2, 5, omega_pow=a, word=w)))
            in_corner = img.a[0][1].is_zero() and img.a[1][0].is_zero() and img.a[1][1].is_zero()
            off_corner = img.a[0][0].is_zero() and img.a[1][0].is_zero() and img.a[1][1].is_zero()
            if (len(w) - a) % 2 == 0:
                assert in_corner
            else:
                assert off_corner
