"""The rank-one pro-p Hecke algebra in the Iwahori-Matsumoto basis.

Extended Weyl group elements are kept in the normal form

    omega^a . s_{word} . t

with `word` a strictly alternating string over {s0, s1} and t a finite torus
element.  Reflection lifts are fixed so that s_i^2 = alpha^vee(-1) (the class
of the standard matrix lifts); all relations re-derive this normal form.

Multiplication of basis elements peels one generator of the right factor at a
time: each step is a single length-additive or quadratic-relation case, which
bounds the work by the word length.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import KindMismatch
from .torus import (
    CharOrbit,
    GroupKind,
    TorusChar,
    TorusCtx,
    TorusElt,
    coroot_image,
    coroot_neg1,
    enumerate_characters,
    mu_alpha_order,
    orbit_idempotent,
    orbit_partition,
    torus_elements,
)


def _flip_word(word, k):
    if k % 2 == 0:
        return word
    return tuple(1 - x for x in word)


def _torus_s_power(t: TorusElt, k):
    return t.s0() if k % 2 else t


@dataclass(frozen=True)
class ExtWeylElt:
    """Normal form omega^omega_pow . s_word . torus."""

    kind: GroupKind
    q: int
    omega_pow: int
    word: tuple
    torus: TorusElt

    def __post_init__(self):
        if self.kind is GroupKind.SL2 and self.omega_pow != 0:
            raise KindMismatch("SL2 has no omega")
        if self.kind is GroupKind.PGL2:
            object.__setattr__(self, "omega_pow", self.omega_pow % 2)
        for a, b in zip(self.word, self.word[1:]):
            if a == b:
                raise KindMismatch("word must strictly alternate")
        if self.torus.kind != self.kind or self.torus.q != self.q:
            raise KindMismatch("torus part has wrong kind")

    @property
    def length(self):
        return len(self.word)

    def to_obj(self):
        return {
            "omega_pow": self.omega_pow,
            "word": list(self.word),
            "torus": list(self.torus.exps),
        }


def weyl(kind, q, omega_pow=0, word=(), torus_exps=None):
    rank = 2 if kind is GroupKind.GL2 else 1
    t = TorusElt(kind, q, tuple(torus_exps) if torus_exps is not None else (0,) * rank)
    return ExtWeylElt(kind, q, omega_pow, tuple(word), t)


def weyl_identity(kind, q):
    return weyl(kind, q)


def _check_same(u, v):
    if u.kind != v.kind or u.q != v.q:
        raise KindMismatch(f"mixed elements: {u.kind}/{u.q} vs {v.kind}/{v.q}")


def weyl_mul(u: ExtWeylElt, v: ExtWeylElt):
    """Normal-form product, using omega s_i omega^-1 = s_{1-i},
    s_i t s_i^-1 = t^{s0}, omega t omega^-1 = t^{s0} and s_i^2 = alpha^vee(-1)."""
    _check_same(u, v)
    kind, q = u.kind, u.q
    a = u.omega_pow + v.omega_pow
    left = list(_flip_word(u.word, v.omega_pow))
    t_u = _torus_s_power(u.torus, v.omega_pow + len(v.word))
    right = list(v.word)
    cancels = 0
    while left and right and left[-1] == right[0]:
        left.pop()
        right.pop(0)
        cancels += 1
    torus = t_u.mul(v.torus)
    if cancels:
        eps = coroot_neg1(kind, q)
        for _ in range(cancels):
            torus = torus.mul(eps)
    return ExtWeylElt(kind, q, a, tuple(left + right), torus)


def weyl_inv(u: ExtWeylElt):
    kind, q = u.kind, u.q
    out = weyl(kind, q, torus_exps=u.torus.inv().exps)
    for letter in reversed(u.word):
        out = weyl_mul(out, weyl(kind, q, word=(letter,)))
    if u.word:
        eps = coroot_neg1(kind, q)
        corr = eps
        for _ in range(len(u.word) - 1):
            corr = corr.mul(eps)
        out = weyl_mul(out, ExtWeylElt(kind, q, 0, (), corr))
    if u.omega_pow:
        out = weyl_mul(out, weyl(kind, q, omega_pow=-u.omega_pow))
    return out


class HeckeElt:
    """Finitely supported map ExtWeylElt -> field coefficient."""

    __slots__ = ("tctx", "kind", "terms")

    def __init__(self, tctx: TorusCtx, kind: GroupKind, terms=None):
        self.tctx = tctx
        self.kind = kind
        self.terms = {}
        if terms:
            for w, c in terms.items():
                self._acc(w, c)

    def _acc(self, w, c):
        if c == 0:
            return
        cur = self.terms.get(w, 0)
        s = self.tctx.field.add_i(cur, c)
        if s:
            self.terms[w] = s
        else:
            self.terms.pop(w, None)

    def copy(self):
        out = HeckeElt(self.tctx, self.kind)
        out.terms = dict(self.terms)
        return out

    def add(self, other):
        out = self.copy()
        for w, c in other.terms.items():
            out._acc(w, c)
        return out

    def sub(self, other):
        out = self.copy()
        neg = self.tctx.field.neg_i
        for w, c in other.terms.items():
            out._acc(w, neg(c))
        return out

    def scal(self, c):
        out = HeckeElt(self.tctx, self.kind)
        mul = self.tctx.field.mul_i
        for w, a in self.terms.items():
            out._acc(w, mul(c, a))
        return out

    def mul(self, other):
        return hecke_mul(self, other)

    def is_zero(self):
        return not self.terms

    def support_lengths(self):
        return sorted({w.length for w in self.terms})

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElt)
            and self.kind == other.kind
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"HeckeElt({self.kind}, {len(self.terms)} terms)"

    def to_obj(self):
        recs = []
        for w in sorted(
            self.terms,
            key=lambda w: (w.length, w.omega_pow, w.word, w.torus.exps),
        ):
            rec = w.to_obj()
            rec["coeff"] = list(self.tctx.field.coords_of(self.terms[w]))
            recs.append(rec)
        return recs


def hecke_zero(tctx, kind):
    return HeckeElt(tctx, kind)


def hecke_basis(tctx, w: ExtWeylElt, coeff=1):
    out = HeckeElt(tctx, w.kind)
    out._acc(w, coeff)
    return out


def hecke_one(tctx, kind):
    return hecke_basis(tctx, weyl_identity(kind, tctx.q))


def gen_Tt(tctx, kind, exps):
    return hecke_basis(tctx, weyl(kind, tctx.q, torus_exps=exps))


def gen_Ts(tctx, kind, i):
    return hecke_basis(tctx, weyl(kind, tctx.q, word=(i,)))


def gen_Tomega(tctx, kind, power=1):
    if kind is GroupKind.SL2:
        raise KindMismatch("SL2 has no T_omega")
    return hecke_basis(tctx, weyl(kind, tctx.q, omega_pow=power))


def generators(tctx, kind):
    """Generator list (name, element) used by centrality tests."""
    q = tctx.q
    gens = [("Ts0", gen_Ts(tctx, kind, 0)), ("Ts1", gen_Ts(tctx, kind, 1))]
    if kind is GroupKind.GL2:
        gens.append(("Tt10", gen_Tt(tctx, kind, (1, 0))))
        gens.append(("Tt01", gen_Tt(tctx, kind, (0, 1))))
        gens.append(("Tomega", gen_Tomega(tctx, kind)))
    else:
        gens.append(("Tt1", gen_Tt(tctx, kind, (1,))))
        if kind is GroupKind.PGL2:
            gens.append(("Tomega", gen_Tomega(tctx, kind)))
    return gens


# -- multiplication ---------------------------------------------------------


def _peel_left(v: ExtWeylElt):
    """v = s_j . v' with lengths additive; returns (j, v')."""
    j = (v.word[0] + v.omega_pow) % 2
    rest = ExtWeylElt(v.kind, v.q, v.omega_pow, v.word[1:], v.torus)
    return j, rest


def _single_letter(tctx, x: ExtWeylElt, j, out, coeff):
    """Accumulate T_x . T_{s_j} into `out` (dict of weyl -> coeff)."""
    kind, q = x.kind, x.q
    t_s = x.torus.s0()
    fld = tctx.field
    if x.word and x.word[-1] == j:
        mu = fld.scalar_i(mu_alpha_order(kind))
        c = fld.mul_i(coeff, mu)
        if c == 0:
            return
        for r in coroot_image(kind, q):
            w = ExtWeylElt(kind, q, x.omega_pow, x.word, r.mul(t_s))
            cur = out.get(w, 0)
            s = fld.add_i(cur, c)
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    else:
        w = ExtWeylElt(kind, q, x.omega_pow, x.word + (j,), t_s)
        cur = out.get(w, 0)
        s = fld.add_i(cur, coeff)
        if s:
            out[w] = s
        else:
            out.pop(w, None)


def _term_mul(tctx, u: ExtWeylElt, v: ExtWeylElt, coeff, acc: HeckeElt):
    """Accumulate coeff * T_u T_v into acc."""
    current = {u: coeff}
    rest = v
    while rest.word:
        j, rest = _peel_left(rest)
        nxt = {}
        for x, c in current.items():
            _single_letter(tctx, x, j, nxt, c)
        current = nxt
        if not current:
            return
    # rest has length zero: T_x T_rest = T_{x . rest}
    for x, c in current.items():
        acc._acc(weyl_mul(x, rest), c)


def hecke_mul(x: HeckeElt, y: HeckeElt):
    if x.kind != y.kind or x.tctx.q != y.tctx.q:
        raise KindMismatch("mixed Hecke elements")
    out = HeckeElt(x.tctx, x.kind)
    if not x.terms or not y.terms:
        return out
    mul = x.tctx.field.mul_i
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            _term_mul(x.tctx, u, v, mul(cu, cv), out)
    return out


def group_alg_to_hecke(tctx, g):
    """Embed k[T(F_q)] into the Hecke algebra."""
    out = HeckeElt(tctx, g.kind)
    for t, c in g.terms.items():
        out._acc(ExtWeylElt(g.kind, tctx.q, 0, (), t), c)
    return out


def orbit_idempotent_hecke(tctx, orbit: CharOrbit):
    return group_alg_to_hecke(tctx, orbit_idempotent(tctx, orbit))


def block_project(x: HeckeElt, orbit: CharOrbit):
    """e_gamma . x."""
    return hecke_mul(orbit_idempotent_hecke(x.tctx, orbit), x)


def is_central(x: HeckeElt, gens=None):
    gens = gens if gens is not None else [g for _, g in generators(x.tctx, x.kind)]
    for g in gens:
        if not hecke_mul(x, g).sub(hecke_mul(g, x)).is_zero():
            return False
    return True


def pgl2_reduce(tctx_pgl: TorusCtx, x: HeckeElt):
    """Quotient map H_GL2 -> H_PGL2 killing T_omega^2 - 1 and central T_t - 1."""
    if x.kind is not GroupKind.GL2:
        raise KindMismatch("pgl2_reduce expects a GL2 element")
    out = HeckeElt(tctx_pgl, GroupKind.PGL2)
    q = x.tctx.q
    for w, c in x.terms.items():
        a, b = w.torus.exps
        t = TorusElt(GroupKind.PGL2, q, (a - b,))
        out._acc(ExtWeylElt(GroupKind.PGL2, q, w.omega_pow % 2, w.word, t), c)
    return out


# ---------------------------------------------------------------------------
# supersingular characters and modules


@dataclass(frozen=True)
class SupersingChar:
    """Character of the affine algebra: restriction to T(F_q) plus the two
    reflection values; finite_pd records Koziol's criterion (case (ii))."""

    restriction: TorusChar
    ts0_val: int  # 0 or -1 (as integers)
    ts1_val: int
    finite_pd: bool

    def value_i(self, tctx, gen_name):
        fld = tctx.field
        v = {"Ts0": self.ts0_val, "Ts1": self.ts1_val}[gen_name]
        return fld.scalar_i(v % fld.p)

    def to_obj(self):
        return {
            "restriction": self.restriction.to_obj(),
            "ts0": self.ts0_val,
            "ts1": self.ts1_val,
            "finite_pd": self.finite_pd,
        }


def supersingular_characters(kind, q):
    """All supersingular characters of the affine algebra, with Koziol flags."""
    out = []
    for xi in enumerate_characters(kind, q):
        if not xi.trivial_on_coroot_image():
            out.append(SupersingChar(xi, 0, 0, finite_pd=False))
        else:
            out.append(SupersingChar(xi, 0, -1, finite_pd=True))
            out.append(SupersingChar(xi, -1, 0, finite_pd=True))
    return out


def sl2_chi(q, n):
    """The supersingular character chi_n of H_SL2 (0 < n <= q-2)."""
    xi = TorusChar(GroupKind.SL2, q, (n,))
    if xi.trivial_on_coroot_image():
        raise KindMismatch("chi_n requires n != 0")
    return SupersingChar(xi, 0, 0, finite_pd=False)


class SupersingModule:
    """Simple supersingular module M_{gamma,lambda} for GL2/PGL2 (2-dimensional,
    basis e0, e1), or a 1-dimensional character module for SL2."""

    def __init__(self, tctx, kind, orbit, lam_idx, char=None):
        self.tctx = tctx
        self.kind = kind
        self.orbit = orbit
        self.lam_idx = lam_idx  # field index of lambda (1 for PGL2)
        self.char = char  # SupersingChar for SL2
        fld = tctx.field
        if kind is GroupKind.SL2:
            self.dim = 1
            v = char.value_i(tctx, "Ts0")
            w = char.value_i(tctx, "Ts1")
            self.mats = {"Ts0": [[v]], "Ts1": [[w]]}
        else:
            if not orbit.regular:
                raise KindMismatch("M_{gamma,lambda} requires a regular orbit")
            self.dim = 2
            zero = 0
            self.mats = {
                "Ts0": [[zero, zero], [zero, zero]],
                "Ts1": [[zero, zero], [zero, zero]],
                "Tomega": [[0, lam_idx], [1, 0]],
            }

    def torus_matrix(self, t: TorusElt):
        fld = self.tctx.field
        if self.kind is GroupKind.SL2:
            return [[self.char.restriction.eval_i(self.tctx, t)]]
        xi, xi_tw = self.orbit.pair()
        return [
            [xi.eval_i(self.tctx, t), 0],
            [0, xi_tw.eval_i(self.tctx, t)],
        ]

    def act_weyl(self, w: ExtWeylElt):
        """Matrix of T_w (length-additive factorisation into generators)."""
        from .linalg import identity, mat_mul

        fld = self.tctx.field
        out = identity(self.dim)
        if w.omega_pow:
            if self.kind is GroupKind.SL2:
                raise KindMismatch("SL2 module has no omega action")
            m = self.mats["Tomega"]
            if w.omega_pow < 0:
                from .linalg import inverse

                m = inverse(fld, m)
            for _ in range(abs(w.omega_pow)):
                out = mat_mul(fld, out, m)
        for letter in w.word:
            out = mat_mul(fld, out, self.mats["Ts0" if letter == 0 else "Ts1"])
        out = mat_mul(fld, out, self.torus_matrix(w.torus))
        return out

    def act_hecke(self, x: HeckeElt):
        from .linalg import mat_add, mat_scal, zeros

        fld = self.tctx.field
        out = zeros(self.dim, self.dim)
        for w, c in x.terms.items():
            out = mat_add(fld, out, mat_scal(fld, c, self.act_weyl(w)))
        return out

    def check(self):
        """Verify the defining relations on this module; raises on failure."""
        from .errors import RelationViolation
        from .linalg import identity, is_zero_mat, mat_mul, mat_scal, mat_sub

        fld = self.tctx.field
        tctx = self.tctx
        kind, q = self.kind, self.tctx.q
        # quadratic relations
        for i, name in ((0, "Ts0"), (1, "Ts1")):
            lhs = mat_mul(fld, self.mats[name], self.mats[name])
            csum = None
            mu = fld.scalar_i(mu_alpha_order(kind))
            from .linalg import mat_add, zeros

            acc = zeros(self.dim, self.dim)
            for t in coroot_image(kind, q):
                acc = mat_add(fld, acc, self.torus_matrix(t))
            rhs = mat_mul(fld, self.mats[name], mat_scal(fld, mu, acc))
            if not is_zero_mat(mat_sub(fld, lhs, rhs)):
                raise RelationViolation(f"quadratic relation fails for {name}")
        # torus conjugation by reflections
        gens_t = torus_elements(kind, q)[: min(8, (q - 1) ** 2)]
        for t in gens_t:
            for name in ("Ts0", "Ts1"):
                lhs = mat_mul(fld, self.mats[name], self.torus_matrix(t))
                rhs = mat_mul(fld, self.torus_matrix(t.s0()), self.mats[name])
                if not is_zero_mat(mat_sub(fld, lhs, rhs)):
                    raise RelationViolation(f"reflection/torus relation fails for {name}")
        if self.kind is not GroupKind.SL2:
            om = self.mats["Tomega"]
            lhs = mat_mul(fld, mat_mul(fld, om, self.mats["Ts0"]), self._omega_inv())
            if not is_zero_mat(mat_sub(fld, lhs, self.mats["Ts1"])):
                raise RelationViolation("omega conjugation fails")
            om2 = mat_mul(fld, om, om)
            lam = self.lam_idx
            if not is_zero_mat(mat_sub(fld, om2, mat_scal(fld, lam, identity(2)))):
                raise RelationViolation("T_omega^2 != lambda")
        return True

    def _omega_inv(self):
        from .linalg import inverse

        return inverse(self.tctx.field, self.mats["Tomega"])

    def label(self):
        if self.kind is GroupKind.SL2:
            return f"chi_{self.char.restriction.exps[0]}"
        return f"M[{sorted(list(c.exps) for c in self.orbit.members)};lam={self.lam_idx}]"


@dataclass
class SupersingularCensus:
    characters: list
    modules: list


def enumerate_supersingular(tctx: TorusCtx, kind: GroupKind, lambdas=None):
    """All supersingular characters plus the simple supersingular modules.

    For GL2 the module list takes one M_{gamma,lambda} per regular orbit and
    per lambda (default: all of F_q^x); for PGL2 lambda is fixed to 1; for SL2
    the modules are the infinite-projective-dimension characters chi_n.
    """
    q = tctx.q
    chars = supersingular_characters(kind, q)
    modules = []
    if kind is GroupKind.SL2:
        for n in range(1, q - 1):
            modules.append(SupersingModule(tctx, kind, None, 1, char=sl2_chi(q, n)))
    else:
        if lambdas is None:
            if kind is GroupKind.PGL2:
                lambdas = [tctx.field.one()]
            else:
                lambdas = [tctx.value(e) for e in range(q - 1)]
        for orb in orbit_partition(kind, q):
            if not orb.regular:
                continue
            for lam in lambdas:
                modules.append(SupersingModule(tctx, kind, orb, lam.i))
    return SupersingularCensus(chars, modules)
