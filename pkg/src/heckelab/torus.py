"""Finite torus T(F_q), its character group with the Weyl action, and idempotents.

All torus and character data are discrete-log exponents relative to the fixed
generator zeta of F_q^x, so the Weyl twist, regularity tests and block labels
are pure integer arithmetic.  Field values appear only inside idempotents and
character evaluations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import CtxMismatch, KindMismatch, UnsupportedCharacteristic
from .gf import FieldCtx


class GroupKind(enum.Enum):
    GL2 = "GL2"
    SL2 = "SL2"
    PGL2 = "PGL2"

    def __str__(self):
        return self.value


def _rank(kind):
    return 2 if kind is GroupKind.GL2 else 1


class TorusCtx:
    """Ambient field together with the residue size q and a fixed zeta of order q-1.

    The ambient field may be larger than F_q (its size is p^m with m a multiple
    of e where q = p^e); zeta is then the canonical power of the ambient
    generator.
    """

    def __init__(self, field: FieldCtx, q: int):
        if (field.q - 1) % (q - 1) != 0 or q < 2:
            raise CtxMismatch(f"ambient field F_{field.q} does not contain mu_{q-1}")
        # q must be a power of the field characteristic
        qq = q
        while qq % field.p == 0:
            qq //= field.p
        if qq != 1:
            raise CtxMismatch(f"{q} is not a power of p={field.p}")
        self.field = field
        self.q = q
        g = field.generator_idx()
        self.zeta_idx = field.pow_i(g, (field.q - 1) // (q - 1))
        # zeta power table, exponents mod q-1
        pw = [1]
        for _ in range(q - 2):
            pw.append(field.mul_i(pw[-1], self.zeta_idx))
        self._zpow = pw
        self._torus_tables = {}

    @property
    def p(self):
        return self.field.p

    def zeta(self):
        return self.field.elt(self.zeta_idx)

    def value_i(self, e):
        """Index of zeta^e."""
        return self._zpow[e % (self.q - 1)]

    def value(self, e):
        return self.field.elt(self.value_i(e))

    def dlog(self, idx):
        """Discrete log base zeta of a nonzero mu_{q-1} element index."""
        for e, v in enumerate(self._zpow):
            if v == idx:
                return e
        raise CtxMismatch("element is not in mu_{q-1}")

    def torus_table(self, kind):
        """(element list, index map, dense multiplication table) for T(F_q)."""
        if kind not in self._torus_tables:
            elems = torus_elements(kind, self.q)
            index = {t: k for k, t in enumerate(elems)}
            table = [[index[a.mul(b)] for b in elems] for a in elems]
            self._torus_tables[kind] = (elems, index, table)
        return self._torus_tables[kind]

    def __repr__(self):
        return f"TorusCtx(q={self.q}, ambient=F_{self.field.q})"


@dataclass(frozen=True)
class TorusElt:
    """diag(zeta^a, zeta^b) for GL2; diag(zeta^a, zeta^-a) for SL2; class of
    diag(zeta^a, 1) for PGL2.  Exponents are reduced mod q-1."""

    kind: GroupKind
    q: int
    exps: tuple

    def __post_init__(self):
        n = self.q - 1
        object.__setattr__(self, "exps", tuple(e % n for e in self.exps))
        if len(self.exps) != _rank(self.kind):
            raise KindMismatch("wrong exponent arity for kind")

    def mul(self, other):
        _same(self, other)
        return TorusElt(self.kind, self.q, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def inv(self):
        return TorusElt(self.kind, self.q, tuple(-a for a in self.exps))

    def s0(self):
        """Conjugation by the finite reflection: swap for GL2, negate otherwise."""
        if self.kind is GroupKind.GL2:
            a, b = self.exps
            return TorusElt(self.kind, self.q, (b, a))
        return TorusElt(self.kind, self.q, (-self.exps[0],))

    def is_identity(self):
        return all(e == 0 for e in self.exps)

    def to_obj(self):
        return {"kind": str(self.kind), "exponents": list(self.exps)}


@dataclass(frozen=True)
class TorusChar:
    """Character of T(F_q): value zeta^(a*j + b*l) on diag(zeta^a, zeta^b) for
    GL2 data (j, l); value zeta^(n*a) for SL2/PGL2 data (n,)."""

    kind: GroupKind
    q: int
    exps: tuple

    def __post_init__(self):
        n = self.q - 1
        object.__setattr__(self, "exps", tuple(e % n for e in self.exps))
        if len(self.exps) != _rank(self.kind):
            raise KindMismatch("wrong exponent arity for kind")

    def eval_exponent(self, t: TorusElt):
        _same(self, t)
        return sum(a * e for a, e in zip(t.exps, self.exps)) % (self.q - 1)

    def eval(self, tctx: TorusCtx, t: TorusElt):
        return tctx.value(self.eval_exponent(t))

    def eval_i(self, tctx: TorusCtx, t: TorusElt):
        return tctx.value_i(self.eval_exponent(t))

    def s0_twist(self):
        if self.kind is GroupKind.GL2:
            j, l = self.exps
            return TorusChar(self.kind, self.q, (l, j))
        return TorusChar(self.kind, self.q, (-self.exps[0],))

    def is_regular(self):
        return self != self.s0_twist()

    @property
    def n_label(self):
        """Value exponent on zeta*id (GL2) / parity class (SL2)."""
        if self.kind is GroupKind.GL2:
            return (self.exps[0] + self.exps[1]) % (self.q - 1)
        if self.kind is GroupKind.SL2:
            return self.exps[0] % 2
        return None

    def trivial_on_coroot_image(self):
        """Whether the character kills alpha^vee(F_q^x)."""
        n = self.q - 1
        if self.kind is GroupKind.GL2:
            return (self.exps[0] - self.exps[1]) % n == 0
        if self.kind is GroupKind.SL2:
            return self.exps[0] % n == 0
        return (2 * self.exps[0]) % n == 0

    def to_obj(self):
        return {"kind": str(self.kind), "exponents": list(self.exps)}


def _same(a, b):
    if a.kind != b.kind or a.q != b.q:
        raise KindMismatch(f"mixed kinds/sizes: {a.kind}/{a.q} vs {b.kind}/{b.q}")


@dataclass(frozen=True)
class CharOrbit:
    """Weyl orbit of characters with its regularity flag and block label."""

    kind: GroupKind
    q: int
    members: frozenset
    regular: bool
    n_label: object

    def rep(self):
        """Deterministic representative (smallest exponent tuple)."""
        return min(self.members, key=lambda c: c.exps)

    def pair(self):
        """(xi, xi^{s0}) with xi the representative (repeated if non-regular)."""
        xi = self.rep()
        return xi, xi.s0_twist()

    def to_obj(self):
        return {
            "members": sorted((list(c.exps) for c in self.members)),
            "regular": self.regular,
            "n_label": self.n_label,
        }


def orbit_of(chi: TorusChar):
    tw = chi.s0_twist()
    members = frozenset({chi, tw})
    return CharOrbit(chi.kind, chi.q, members, chi.is_regular(), chi.n_label)


# ---------------------------------------------------------------------------
# enumeration


def torus_elements(kind, q):
    n = q - 1
    if kind is GroupKind.GL2:
        return [TorusElt(kind, q, (a, b)) for a in range(n) for b in range(n)]
    return [TorusElt(kind, q, (a,)) for a in range(n)]


def enumerate_characters(kind, q):
    n = q - 1
    if kind is GroupKind.GL2:
        return [TorusChar(kind, q, (j, l)) for j in range(n) for l in range(n)]
    return [TorusChar(kind, q, (j,)) for j in range(n)]


def s0_twist(chi):
    return chi.s0_twist()


def orbit_partition(kind, q):
    seen = set()
    orbits = []
    for chi in enumerate_characters(kind, q):
        if chi in seen:
            continue
        orb = orbit_of(chi)
        seen.update(orb.members)
        orbits.append(orb)
    return orbits


def sign_character(kind, q):
    """The order-two character of T_{SL2}(F_q) (p odd); None when absent."""
    if kind is not GroupKind.SL2 or q % 2 == 0:
        return None
    return TorusChar(kind, q, ((q - 1) // 2,))


# ---------------------------------------------------------------------------
# coroot data (fixed per kind; verified against matrix conventions in tests)

def coroot(kind, q, c):
    """alpha^vee(zeta^c) as a torus element."""
    if kind is GroupKind.GL2:
        return TorusElt(kind, q, (c, -c))
    if kind is GroupKind.SL2:
        return TorusElt(kind, q, (c,))
    return TorusElt(kind, q, (2 * c,))


def mu_alpha_order(kind):
    return 2 if kind is GroupKind.PGL2 else 1


def coroot_image(kind, q):
    """The subgroup alpha^vee(F_q^x) as a duplicate-free element list."""
    out = []
    seen = set()
    for c in range(q - 1):
        t = coroot(kind, q, c)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def coroot_neg1(kind, q):
    """alpha^vee(-1); the square of the chosen reflection lifts."""
    return coroot(kind, q, (q - 1) // 2 if q % 2 == 1 else 0)


# ---------------------------------------------------------------------------
# group algebra k[T(F_q)] and idempotents


class GroupAlgElt:
    """Finitely supported map TorusElt -> field coefficient (no explicit zeros)."""

    def __init__(self, tctx, kind, terms=None):
        self.tctx = tctx
        self.kind = kind
        self.terms = {}
        if terms:
            for t, c in terms.items():
                self._acc(t, c)

    def _acc(self, t, c):
        if c == 0:
            return
        cur = self.terms.get(t, 0)
        s = self.tctx.field.add_i(cur, c)
        if s:
            self.terms[t] = s
        else:
            self.terms.pop(t, None)

    def copy(self):
        e = GroupAlgElt(self.tctx, self.kind)
        e.terms = dict(self.terms)
        return e

    def add(self, other):
        out = self.copy()
        for t, c in other.terms.items():
            out._acc(t, c)
        return out

    def scal(self, c):
        out = GroupAlgElt(self.tctx, self.kind)
        mul = self.tctx.field.mul_i
        for t, a in self.terms.items():
            out._acc(t, mul(c, a))
        return out

    def conv(self, other):
        """Convolution product in k[T(F_q)], via the dense group table."""
        elems, index, table = self.tctx.torus_table(self.kind)
        fld = self.tctx.field
        mul, add = fld.mul_i, fld.add_i
        dense = [0] * len(elems)
        left = [(index[t], c) for t, c in self.terms.items()]
        for t2, c2 in other.terms.items():
            k2 = index[t2]
            for k1, c1 in left:
                k = table[k1][k2]
                dense[k] = add(dense[k], mul(c1, c2))
        out = GroupAlgElt(self.tctx, self.kind)
        for k, c in enumerate(dense):
            if c:
                out.terms[elems[k]] = c
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, GroupAlgElt) and self.kind == other.kind and self.terms == other.terms

    def __repr__(self):
        return f"GroupAlgElt({len(self.terms)} terms)"


def group_alg_one(tctx, kind):
    e = GroupAlgElt(tctx, kind)
    e._acc(TorusElt(kind, tctx.q, (0,) * _rank(kind)), 1)
    return e


def idempotent(tctx, chi: TorusChar):
    """e_xi = |T|^{-1} sum_t xi(t^{-1}) T_t."""
    q = tctx.q
    size = (q - 1) ** _rank(chi.kind)
    inv_size = tctx.field.inv_i(tctx.field.scalar_i(size))
    out = GroupAlgElt(tctx, chi.kind)
    mul = tctx.field.mul_i
    for t in torus_elements(chi.kind, q):
        out._acc(t, mul(inv_size, chi.eval_i(tctx, t.inv())))
    return out


def orbit_idempotent(tctx, orbit: CharOrbit):
    """e_gamma: e_xi for non-regular orbits, e_xi + e_{xi^{s0}} for regular ones."""
    out = GroupAlgElt(tctx, orbit.kind)
    for chi in orbit.members:
        out = out.add(idempotent(tctx, chi))
    return out


# ---------------------------------------------------------------------------
# lifts SL2 -> GL2


def lift_character(chi: TorusChar, j=None):
    """The GL2 lift of an SL2 character with xi~(diag(z^a, z^b)) = z^(a*j - b*(n-j)).

    Default j = ceil(n/2), the convention used for the enlarged centre and the
    SL2 chain components.
    """
    if chi.kind is not GroupKind.SL2:
        raise KindMismatch("lift_character expects an SL2 character")
    n = chi.exps[0]
    if j is None:
        j = (n + 1) // 2
    return TorusChar(GroupKind.GL2, chi.q, (j, j - n))


def lifted_orbit(chi: TorusChar):
    return orbit_of(lift_character(chi))


def restrict_to_sl2(chi: TorusChar):
    """Restriction of a GL2 character to the SL2 torus."""
    if chi.kind is not GroupKind.GL2:
        raise KindMismatch("expects a GL2 character")
    j, l = chi.exps
    return TorusChar(GroupKind.SL2, chi.q, (j - l,))


def require_odd_q(kind, q):
    if q % 2 == 0:
        raise UnsupportedCharacteristic(f"{kind} construction requires p > 2 (got q={q})")
