"""Finite-dimensional module theory for the finite Hecke-type algebras.

Covers the four-dimensional algebra R (two idempotents e1, e2 and T with
e_i T = T e_{3-i}, T^2 = 0), the dual-numbers algebra k[T]/(T^2), and the
Laurent extension S = R[Z^{+-1}] specialised at an invertible scalar.

Decomposition into indecomposables uses the constructive ranks
b_i = rank(T : e_i M -> e_{3-i} M); every run is certified by an explicit
change of basis exhibiting the direct sum, so correctness does not rest on
the derivation of the formula.

Stable homs quotient by the maps factoring through a projective cover, which
over a self-injective algebra captures exactly the stable-zero maps.  Ext is
computed from stepwise projective resolutions (which come out 2-periodic for
the one-dimensional modules).  The S-level computations run on the totalised
(periodic x Koszul) resolutions, so every Hom space is finite dimensional.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    ComparisonFailure,
    CtxMismatch,
    OutsideCatalogue,
    RelationViolation,
    ZeroLambda,
)
from .linalg import (
    Span,
    identity,
    inverse,
    is_zero_mat,
    mat_mul,
    mat_sub,
    mat_vec,
    nullspace,
    rank,
    solve,
    zeros,
)
from .rings import LaurentPoly


class AlgebraKind(enum.Enum):
    R = "R"
    KT2 = "KT2"
    S_AT_LAMBDA = "S_AT_LAMBDA"


_GENS = {
    AlgebraKind.R: ("e1", "e2", "T"),
    AlgebraKind.KT2: ("T",),
    AlgebraKind.S_AT_LAMBDA: ("e1", "e2", "T"),
}


@dataclass
class FDModule:
    kind: AlgebraKind
    ctx: object
    dim: int
    action: dict
    lam_idx: int = 0  # scalar action of Z for S_AT_LAMBDA

    def gens(self):
        return _GENS[self.kind]

    def g(self, name):
        return self.action[name]

    def check_relations(self):
        ctx, n = self.ctx, self.dim
        T = self.g("T")
        if not is_zero_mat(mat_mul(ctx, T, T)):
            raise RelationViolation("T^2 != 0")
        if self.kind in (AlgebraKind.R, AlgebraKind.S_AT_LAMBDA):
            e1, e2 = self.g("e1"), self.g("e2")
            if not is_zero_mat(mat_sub(ctx, mat_mul(ctx, e1, e1), e1)):
                raise RelationViolation("e1 not idempotent")
            if not is_zero_mat(mat_sub(ctx, mat_mul(ctx, e2, e2), e2)):
                raise RelationViolation("e2 not idempotent")
            if not is_zero_mat(mat_mul(ctx, e1, e2)):
                raise RelationViolation("e1 e2 != 0")
            s = [[ctx.add_i(e1[i][j], e2[i][j]) for j in range(n)] for i in range(n)]
            if not is_zero_mat(mat_sub(ctx, s, identity(n))):
                raise RelationViolation("e1 + e2 != 1")
            if not is_zero_mat(mat_sub(ctx, mat_mul(ctx, e1, T), mat_mul(ctx, T, e2))):
                raise RelationViolation("e1 T != T e2")
            if self.kind is AlgebraKind.S_AT_LAMBDA and self.lam_idx == 0:
                raise ZeroLambda("Z must act invertibly")
        return True

    def direct_sum(self, other):
        if self.kind != other.kind or self.ctx.key != other.ctx.key:
            raise CtxMismatch("cannot sum modules over different algebras")
        n, m = self.dim, other.dim
        act = {}
        for name in self.gens():
            A, B = self.g(name), other.g(name)
            M = zeros(n + m, n + m)
            for i in range(n):
                for j in range(n):
                    M[i][j] = A[i][j]
            for i in range(m):
                for j in range(m):
                    M[n + i][n + j] = B[i][j]
            act[name] = M
        return FDModule(self.kind, self.ctx, n + m, act, self.lam_idx)

    def conjugate(self, C):
        Ci = inverse(self.ctx, C)
        act = {name: mat_mul(self.ctx, Ci, mat_mul(self.ctx, self.g(name), C)) for name in self.gens()}
        return FDModule(self.kind, self.ctx, self.dim, act, self.lam_idx)

    def to_obj(self):
        return {
            "kind": self.kind.value,
            "dim": self.dim,
            "action": {k: [row[:] for row in v] for k, v in self.action.items()},
        }


# -- standard modules ---------------------------------------------------------


def std_chi(ctx, i):
    """chi_i: one-dimensional, T -> 0, e_j -> delta_ij."""
    one = [[1]]
    zero = [[0]]
    act = {"e1": one if i == 1 else zero, "e2": one if i == 2 else zero, "T": zero}
    return FDModule(AlgebraKind.R, ctx, 1, act)


def std_proj(ctx, i):
    """Re_i with basis (e_i, T e_i)."""
    if i == 1:
        e1 = [[1, 0], [0, 0]]
        e2 = [[0, 0], [0, 1]]
    else:
        e1 = [[0, 0], [0, 1]]
        e2 = [[1, 0], [0, 0]]
    T = [[0, 0], [1, 0]]
    return FDModule(AlgebraKind.R, ctx, 2, {"e1": e1, "e2": e2, "T": T})


def kt2_chi(ctx):
    return FDModule(AlgebraKind.KT2, ctx, 1, {"T": [[0]]})


def kt2_free(ctx):
    return FDModule(AlgebraKind.KT2, ctx, 2, {"T": [[0, 0], [1, 0]]})


def std_module(ctx, a1, a2, b1, b2):
    """chi1^a1 (+) chi2^a2 (+) Re1^b1 (+) Re2^b2 in this fixed order."""
    mods = (
        [std_chi(ctx, 1)] * a1 + [std_chi(ctx, 2)] * a2 + [std_proj(ctx, 1)] * b1 + [std_proj(ctx, 2)] * b2
    )
    if not mods:
        return FDModule(AlgebraKind.R, ctx, 0, {"e1": [], "e2": [], "T": []})
    out = mods[0]
    for m in mods[1:]:
        out = out.direct_sum(m)
    return out


# -- subspace helpers ---------------------------------------------------------


def _cols_matrix(cols, dim):
    return [[c[i] for c in cols] for i in range(dim)]


def _image_basis(ctx, A):
    """Independent columns of the matrix A, as column vectors."""
    if not A:
        return []
    n = len(A)
    cols = [[A[i][j] for i in range(n)] for j in range(len(A[0]))]
    span = Span(ctx, n)
    out = []
    for c in cols:
        if span.add(c):
            out.append(c)
    return out


def _coords_in(ctx, basis_cols, v, dim):
    return solve(ctx, _cols_matrix(basis_cols, dim), v)


# -- decomposition ------------------------------------------------------------


@dataclass
class DecompResult:
    a1: int
    a2: int
    b1: int
    b2: int
    change: list
    certified: bool

    def counts(self):
        return (self.a1, self.a2, self.b1, self.b2)

    def to_obj(self):
        return {"a1": self.a1, "a2": self.a2, "b1": self.b1, "b2": self.b2}


def _split_T_data(ctx, M, side_cols, T):
    """For V = span(side_cols): pivot vectors with independent T-images, and a
    basis of ker(T|V) in V-coordinates."""
    n = M.dim
    img_matrix = _cols_matrix([mat_vec(ctx, T, c) for c in side_cols], n)
    ker_coords = nullspace(ctx, img_matrix) if side_cols else []
    from .linalg import rref

    _, pivots = rref(ctx, img_matrix)
    return pivots, ker_coords


def decompose(M: FDModule):
    """Multiplicities (a1, a2, b1, b2) with a certified change of basis."""
    if M.kind is AlgebraKind.KT2:
        return _decompose_kt2(M)
    M.check_relations()
    ctx, n = M.ctx, M.dim
    T = M.g("T")
    V1 = _image_basis(ctx, M.g("e1"))
    V2 = _image_basis(ctx, M.g("e2"))

    piv1, ker1_coords = _split_T_data(ctx, M, V1, T)
    piv2, ker2_coords = _split_T_data(ctx, M, V2, T)
    b1, b2 = len(piv1), len(piv2)
    us = [V1[j] for j in piv1]
    vs = [V2[j] for j in piv2]
    ker1 = [mat_vec(ctx, _cols_matrix(V1, n), c) for c in ker1_coords] if V1 else []
    ker2 = [mat_vec(ctx, _cols_matrix(V2, n), c) for c in ker2_coords] if V2 else []

    def complement(inside, ambient):
        span = Span(ctx, n)
        for v in inside:
            span.add(v)
        out = []
        for v in ambient:
            if span.add(v):
                out.append(v)
        return out

    Tvs = [mat_vec(ctx, T, v) for v in vs]  # inside ker(T|V1)
    Tus = [mat_vec(ctx, T, u) for u in us]  # inside ker(T|V2)
    w1 = complement(Tvs, ker1)
    w2 = complement(Tus, ker2)
    a1, a2 = len(w1), len(w2)

    cols = list(w1) + list(w2)
    for u in us:
        cols.append(u)
        cols.append(mat_vec(ctx, T, u))
    for v in vs:
        cols.append(v)
        cols.append(mat_vec(ctx, T, v))
    C = _cols_matrix(cols, n)
    certified = False
    if len(cols) == n and inverse(ctx, C) is not None:
        model = std_module(ctx, a1, a2, b1, b2)
        conj = M.conjugate(C)
        certified = all(
            is_zero_mat(mat_sub(ctx, conj.g(g), model.g(g))) for g in M.gens()
        )
    if not certified:
        raise RelationViolation("decomposition certificate failed")
    assert a1 + b1 + b2 == len(V1) and a2 + b1 + b2 == len(V2)
    return DecompResult(a1, a2, b1, b2, C, certified)


def _decompose_kt2(M):
    M.check_relations()
    ctx, n = M.ctx, M.dim
    T = M.g("T")
    from .linalg import rref

    _, pivots = rref(ctx, T)
    b = len(pivots)
    us = [[1 if i == j else 0 for i in range(n)] for j in pivots]
    Tus = [mat_vec(ctx, T, u) for u in us]
    kerT = nullspace(ctx, T)
    span = Span(ctx, n)
    for v in Tus:
        span.add(v)
    ws = [v for v in kerT if span.add(v)]
    a = len(ws)
    cols = list(ws)
    for u in us:
        cols.append(u)
        cols.append(mat_vec(ctx, T, u))
    C = _cols_matrix(cols, n)
    model = kt2_chi(ctx)
    mods = [kt2_chi(ctx)] * a + [kt2_free(ctx)] * b
    model = mods[0]
    for m in mods[1:]:
        model = model.direct_sum(m)
    conj = M.conjugate(C)
    if not is_zero_mat(mat_sub(ctx, conj.g("T"), model.g("T"))):
        raise RelationViolation("decomposition certificate failed")
    return DecompResult(a, 0, b, 0, C, True)


# -- hom spaces and stable homs ------------------------------------------------


def hom_space(M: FDModule, N: FDModule):
    """Basis of Hom(M, N) as flattened (dimN x dimM) matrices."""
    ctx = M.ctx
    nm, nn = M.dim, N.dim
    if nm == 0 or nn == 0:
        return []
    rows = []
    for g in M.gens():
        gm, gn = M.g(g), N.g(g)
        # condition: f gm - gn f = 0, entries f[i][j]
        for i in range(nn):
            for j in range(nm):
                row = [0] * (nn * nm)
                for k in range(nm):
                    row[i * nm + k] = ctx.add_i(row[i * nm + k], gm[k][j])
                for k in range(nn):
                    row[k * nm + j] = ctx.sub_i(row[k * nm + j], gn[i][k])
                rows.append(row)
    return nullspace(ctx, rows)


def _unflatten(f, nn, nm):
    return [f[i * nm : (i + 1) * nm] for i in range(nn)]


def projective_cover(N: FDModule):
    """(P, pi) with P a sum of indecomposable projectives and pi: P ->> N."""
    ctx, n = N.ctx, N.dim
    T = N.g("T")
    TN = [mat_vec(ctx, T, [1 if k == j else 0 for k in range(n)]) for j in range(n)]
    if N.kind is AlgebraKind.KT2:
        span = Span(ctx, n)
        for v in TN:
            span.add(v)
        gens = []
        for j in range(n):
            v = [1 if k == j else 0 for k in range(n)]
            if span.add(v):
                gens.append(v)
        P = None
        cols = []
        for v in gens:
            P = kt2_free(ctx) if P is None else P.direct_sum(kt2_free(ctx))
            cols.append(v)
            cols.append(mat_vec(ctx, T, v))
        if P is None:
            P = FDModule(AlgebraKind.KT2, ctx, 0, {"T": []})
        pi = _cols_matrix(cols, n)
        return P, pi
    gens = []
    for i, ename in ((1, "e1"), (2, "e2")):
        Vi = _image_basis(ctx, N.g(ename))
        other = _image_basis(ctx, N.g("e2" if i == 1 else "e1"))
        span = Span(ctx, n)
        for v in other:
            span.add(mat_vec(ctx, T, v))
        for v in Vi:
            if span.add(v):
                gens.append((i, v))
    P = None
    cols = []
    for i, v in gens:
        piece = std_proj(ctx, i)
        P = piece if P is None else P.direct_sum(piece)
        cols.append(v)
        cols.append(mat_vec(ctx, T, v))
    if P is None:
        P = FDModule(N.kind, ctx, 0, {"e1": [], "e2": [], "T": []})
    pi = _cols_matrix(cols, n)
    if rank(ctx, pi) != n:
        raise RelationViolation("projective cover is not surjective")
    return P, pi


def stable_hom(M: FDModule, N: FDModule):
    """(dimension, representative basis) of Hom(M, N) / (factoring through proj)."""
    ctx = M.ctx
    homs = hom_space(M, N)
    if not homs:
        return 0, []
    P, pi = projective_cover(N)
    factored = Span(ctx, len(homs[0]))
    for u in hom_space(M, P):
        um = _unflatten(u, P.dim, M.dim)
        fm = mat_mul(ctx, pi, um) if P.dim else zeros(N.dim, M.dim)
        factored.add([c for row in fm for c in row])
    reps = []
    sp = factored.copy()
    for h in homs:
        if sp.add(h):
            reps.append(_unflatten(h, N.dim, M.dim))
    return len(reps), reps


# -- Ext via stepwise projective resolutions -----------------------------------


def _submodule(M: FDModule, cols):
    """The submodule spanned by cols, with its action and inclusion matrix."""
    ctx, n = M.ctx, M.dim
    k = len(cols)
    inc = _cols_matrix(cols, n)
    act = {}
    for g in M.gens():
        A = zeros(k, k)
        for j, c in enumerate(cols):
            img = mat_vec(ctx, M.g(g), c)
            coords = _coords_in(ctx, cols, img, n)
            if coords is None:
                raise RelationViolation("subspace is not action-stable")
            for i in range(k):
                A[i][j] = coords[i]
        act[g] = A
    return FDModule(M.kind, ctx, k, act, M.lam_idx), inc


def projective_resolution(M: FDModule, length):
    """P_length -> ... -> P_0 -> M; returns ([P_j], [d_j: P_j -> P_{j-1}], pi0)."""
    ctx = M.ctx
    Ps, ds = [], []
    P0, pi0 = projective_cover(M)
    Ps.append(P0)
    current_cover, target = pi0, M
    for _ in range(length):
        ker_cols = nullspace(ctx, current_cover) if Ps[-1].dim else []
        K, inc = _submodule(Ps[-1], ker_cols)
        Pn, piK = projective_cover(K)
        d = mat_mul(ctx, inc, piK) if K.dim and Pn.dim else zeros(Ps[-1].dim, Pn.dim)
        Ps.append(Pn)
        ds.append(d)
        current_cover = piK
        target = K
    return Ps, ds, pi0


def ext_group(M: FDModule, N: FDModule, n: int):
    """dim Ext^n(M, N) from Hom(P_., N)."""
    ctx = M.ctx
    Ps, ds, _ = projective_resolution(M, n + 1)
    homs = [hom_space(Ps[j], N) for j in range(n + 2)]

    def induced(j):
        """matrix of Hom(P_j, N) -> Hom(P_{j+1}, N), f -> f . d_{j+1}."""
        src = homs[j]
        if not src:
            return []
        out_rows = []
        for f in src:
            fm = _unflatten(f, N.dim, Ps[j].dim)
            comp = (
                mat_mul(ctx, fm, ds[j]) if Ps[j].dim and Ps[j + 1].dim else zeros(N.dim, Ps[j + 1].dim)
            )
            out_rows.append([c for row in comp for c in row])
        return out_rows

    # vectors of the induced images live in entry coordinates of Hom(P_{j+1}, N)
    img_prev = induced(n - 1) if n >= 1 else []
    cur = induced(n)
    dim_cur = len(homs[n])
    # kernel of the map on Hom(P_n, N): rows of `cur` are images of basis elts
    if dim_cur == 0:
        return 0
    ker_dim = dim_cur - rank(ctx, cur) if cur else dim_cur
    img_dim = rank(ctx, img_prev) if img_prev else 0
    return ker_dim - img_dim


# -- shift ---------------------------------------------------------------------


def _socle_cols(M):
    ctx = M.ctx
    return nullspace(ctx, M.g("T")) if M.dim else []


def shift(M: FDModule):
    """Cokernel of an injection into an injective (= projective) module.

    The embedding extends a prescribed map on an e-homogeneous socle basis;
    it is injective because the socle is essential in a finite module.
    """
    ctx, n = M.ctx, M.dim
    if n == 0:
        return M
    soc = _socle_cols(M)
    pieces, targets = [], []
    if M.kind is AlgebraKind.KT2:
        for v in soc:
            pieces.append(kt2_free(ctx))
            targets.append(v)
    else:
        for name, i in (("e1", 1), ("e2", 2)):
            part = _image_basis(ctx, _cols_matrix([mat_vec(ctx, M.g(name), v) for v in soc], n)) if soc else []
            for v in part:
                # E(chi_i) = Re_{3-i}, whose socle is spanned by T e_{3-i}
                pieces.append(std_proj(ctx, 3 - i))
                targets.append(v)
    E = pieces[0]
    for p in pieces[1:]:
        E = E.direct_sum(p)
    dE = E.dim
    pre_cols, pre_vals = [], []
    offset = 0
    for piece, v in zip(pieces, targets):
        tvec = [0] * dE
        tvec[offset + 1] = 1  # the T-generator sits at index 1 of each summand
        pre_cols.append(v)
        pre_vals.append(tvec)
        offset += piece.dim
    # solve for a module map f: M -> E extending the prescription
    rows, rhs = [], []
    nm, ne = n, dE
    for g in M.gens():
        gm, ge = M.g(g), E.g(g)
        for i in range(ne):
            for j in range(nm):
                row = [0] * (ne * nm)
                for k in range(nm):
                    row[i * nm + k] = ctx.add_i(row[i * nm + k], gm[k][j])
                for k in range(ne):
                    row[k * nm + j] = ctx.sub_i(row[k * nm + j], ge[i][k])
                rows.append(row)
                rhs.append(0)
    for v, tv in zip(pre_cols, pre_vals):
        for i in range(ne):
            row = [0] * (ne * nm)
            for j in range(nm):
                row[i * nm + j] = v[j]
            rows.append(row)
            rhs.append(tv[i])
    f = solve(ctx, rows, rhs)
    if f is None:
        raise RelationViolation("injective extension unexpectedly unsolvable")
    fm = _unflatten(f, ne, nm)
    if nullspace(ctx, fm):
        raise RelationViolation("embedding into injective hull failed")
    # cokernel coordinates: complete the image columns by standard vectors
    img_cols = [[fm[i][j] for i in range(ne)] for j in range(nm)]
    span = Span(ctx, ne)
    for col in img_cols:
        span.add(col)
    comp_idx = []
    for j in range(ne):
        v = [1 if i == j else 0 for i in range(ne)]
        if span.add(v):
            comp_idx.append(j)
    k = len(comp_idx)
    full_cols = img_cols + [[1 if i == j else 0 for i in range(ne)] for j in comp_idx]
    fullinv = inverse(ctx, _cols_matrix(full_cols, ne))
    proj = fullinv[len(img_cols):]
    act = {}
    for g in M.gens():
        ge = E.g(g)
        A = zeros(k, k)
        for jj, j in enumerate(comp_idx):
            col = [ge[i][j] for i in range(ne)]
            qc = mat_vec(ctx, proj, col)
            for ii in range(k):
                A[ii][jj] = qc[ii]
        act[g] = A
    return FDModule(M.kind, ctx, k, act, M.lam_idx)


def iso_class(M: FDModule):
    """Multiplicity tuple of the decomposition (iso invariant)."""
    return decompose(M).counts()


def generator_test(M: FDModule):
    """True iff the chi-classes cannot see M, cross-checked against decompose."""
    ctx = M.ctx
    stable_zero = all(
        stable_hom(std_chi(ctx, i), X)[0] == 0
        for i in (1, 2)
        for X in (M, shift(M))
    )
    d = decompose(M)
    proj = d.a1 == 0 and d.a2 == 0
    if stable_zero != proj:
        raise ComparisonFailure("stable-hom test disagrees with the classification")
    return stable_zero


# -- Ext over S at a specialisation ---------------------------------------------


def _parity_idem(i, m):
    return i if m % 2 == 0 else 3 - i


def ext_S_specialized(ctx, i, j, lam_idx, n):
    """dim Ext_S^n(chi_{i,lam}, chi_{j,lam}) via the totalised resolution.

    Q_0 = Se_i, Q_m = Se_{p(m)} (+) Se_{p(m-1)}; the boundary components are
    right multiplications by T and +-(Z - lam), whose induced action on the
    one-dimensional target is computed (not assumed) to vanish.
    """
    if lam_idx == 0:
        raise ZeroLambda("specialisation parameter must be nonzero")
    if n < 0:
        raise ValueError("degree must be >= 0")

    def slots(m):
        if m == 0:
            return [_parity_idem(i, 0)]
        return [_parity_idem(i, m), _parity_idem(i, m - 1)]

    def act_on_chi(gen):
        # action of the right-multiplier on the 1-dim module chi_{j,lam}
        if gen == "T":
            return 0
        if gen == "Z-lam":
            return ctx.sub_i(lam_idx, lam_idx)
        if gen == "-(Z-lam)":
            return ctx.neg_i(ctx.sub_i(lam_idx, lam_idx))
        raise ValueError(gen)

    def boundary_components(m):
        """Components of Q_m -> Q_{m-1} as (target_slot, source_slot, gen)."""
        comps = [("T", 0, 0)]
        if m >= 2:
            comps.append(("T", 1, 1))
            sign = "Z-lam" if m % 2 == 0 else "-(Z-lam)"
            comps.append((sign, 0, 1))
        elif m == 1:
            comps.append(("Z-lam", 0, 1))
        return comps

    def hom_coords(m):
        return [k for k, a in enumerate(slots(m)) if a == j]

    def induced_matrix(m):
        """Hom(Q_m, chi) -> Hom(Q_{m+1}, chi) from the boundary Q_{m+1} -> Q_m."""
        src, tgt = hom_coords(m), hom_coords(m + 1)
        A = zeros(len(tgt), len(src))
        src_slots, tgt_slots = slots(m), slots(m + 1)
        for gen, t_slot, s_slot in boundary_components(m + 1):
            # boundary component: source slot s_slot of Q_{m+1} -> t_slot of Q_m
            if src_slots[t_slot] != j or tgt_slots[s_slot] != j:
                continue
            val = act_on_chi(gen)
            r = tgt.index(s_slot)
            c = src.index(t_slot)
            A[r][c] = ctx.add_i(A[r][c], val)
        return A, len(src), len(tgt)

    A_n, dim_n, _ = induced_matrix(n)
    if dim_n == 0:
        return 0
    ker = dim_n - (rank(ctx, A_n) if A_n else 0)
    img = 0
    if n >= 1:
        A_prev, dim_prev, _ = induced_matrix(n - 1)
        img = rank(ctx, A_prev) if A_prev and dim_prev else 0
    return ker - img


def stable_hom_S(ctx, i, j, lam_idx):
    """[chi_{i,lam}, chi_{j,lam}]_S via the shift identity
    [chi_{i,lam}, -] = Ext^1(chi_{3-i,lam}, -)."""
    return ext_S_specialized(ctx, 3 - i, j, lam_idx, 1)


# -- the stable endomorphism algebra of a supersingular module ------------------


def _slot_e(i, l, s):
    """e-index of slot s (0 or 1) of the totalised complex of chi_i at level l."""
    return _parity_idem(i, l) if s == 0 else _parity_idem(i, l - 1)


class _WinMap:
    """2-periodic family of maps TOT(i) -> TOT(j) of a fixed degree.

    comps[lpar][t][s] is the Laurent coefficient of the component from source
    slot s at level l (l = lpar mod 2) to target slot t at level l + degree;
    the tau-typing is implied by the slot e-indices.
    """

    def __init__(self, ctx, i, j, degree, comps=None):
        self.ctx = ctx
        self.i = i
        self.j = j
        self.degree = degree
        if comps is None:
            zero = LaurentPoly(ctx)
            comps = [[[zero, zero], [zero, zero]] for _ in range(2)]
        self.comps = comps

    def entry(self, lpar, t, s):
        return self.comps[lpar][t][s]

    def add(self, other):
        out = _WinMap(self.ctx, self.i, self.j, self.degree)
        for lp in range(2):
            for t in range(2):
                for s in range(2):
                    out.comps[lp][t][s] = self.comps[lp][t][s].add(other.comps[lp][t][s])
        return out

    def sub(self, other):
        return self.add(other.scal(self.ctx.neg_i(1)))

    def scal(self, c):
        out = _WinMap(self.ctx, self.i, self.j, self.degree)
        for lp in range(2):
            for t in range(2):
                for s in range(2):
                    out.comps[lp][t][s] = self.comps[lp][t][s].scal(c)
        return out

    def is_zero(self):
        return all(
            self.comps[lp][t][s].is_zero() for lp in range(2) for t in range(2) for s in range(2)
        )

    def vector(self, zlo, zhi):
        out = []
        for lp in range(2):
            for t in range(2):
                for s in range(2):
                    out.extend(self.comps[lp][t][s].coeff_vector(zlo, zhi))
        return out


def _compose_entry(ctx, a, b, c, pol_first, pol_second):
    """Right-mult composition Se_a -> Se_b -> Se_c; tau^2 = 0 kills double flips."""
    if a != b and b != c:
        return LaurentPoly(ctx)
    return pol_first.mul(pol_second)


def _win_compose(second: _WinMap, first: _WinMap):
    """second . first (apply `first`, then `second`)."""
    ctx = first.ctx
    assert first.j == second.i
    out = _WinMap(ctx, first.i, second.j, first.degree + second.degree)
    for lp in range(2):
        mid_l = (lp + first.degree) % 2
        for t in range(2):
            for s in range(2):
                acc = LaurentPoly(ctx)
                for m in range(2):
                    a = _slot_e(first.i, lp, s)
                    b = _slot_e(first.j, mid_l, m)
                    c = _slot_e(second.j, (mid_l + second.degree) % 2, t)
                    term = _compose_entry(
                        ctx, a, b, c, first.comps[lp][m][s], second.comps[mid_l][t][m]
                    )
                    acc = acc.add(term)
                out.comps[lp][t][s] = acc
    return out


def _differential(ctx, i, lam_idx):
    """The degree-1 differential of TOT(i): components T on the diagonal and
    (-1)^l (Z - lam) from the second slot to the first."""
    d = _WinMap(ctx, i, i, 1)
    one = LaurentPoly.scalar(ctx, 1)
    zml = LaurentPoly(ctx, {1: 1, 0: ctx.neg_i(lam_idx)})
    for lp in range(2):
        d.comps[lp][0][0] = one  # . T
        d.comps[lp][1][1] = one  # . T
        sign = 1 if lp % 2 == 0 else ctx.neg_i(1)
        d.comps[lp][0][1] = zml.scal(sign)
    return d


def _chain_defect(f: _WinMap, lam_idx):
    """D_j . f - f . D_i (zero iff f is a chain map of degree 0)."""
    ctx = f.ctx
    Di = _differential(ctx, f.i, lam_idx)
    Dj = _differential(ctx, f.j, lam_idx)
    return _win_compose(Dj, f).sub(_win_compose(f, Di))


def _boundary_of(h: _WinMap, lam_idx):
    """D h + h D for a degree -1 family h."""
    ctx = h.ctx
    Di = _differential(ctx, h.i, lam_idx)
    Dj = _differential(ctx, h.j, lam_idx)
    return _win_compose(Dj, h).add(_win_compose(h, Di))


def _boundary_span(ctx, i, j, lam_idx, zwin):
    """Span of null-homotopic degree-0 maps from 2-periodic homotopies."""
    zlo, zhi = -(zwin + 1), zwin + 1
    span = Span(ctx, 8 * (zhi - zlo + 1))
    basis = []
    for lp in range(2):
        for t in range(2):
            for s in range(2):
                for z in range(-zwin, zwin + 1):
                    h = _WinMap(ctx, i, j, -1)
                    h.comps[lp][t][s] = LaurentPoly.z(ctx, z)
                    b = _boundary_of(h, lam_idx)
                    span.add(b.vector(zlo, zhi))
    return span, (zlo, zhi)


def _identity_map(ctx, i):
    f = _WinMap(ctx, i, i, 0)
    one = LaurentPoly.scalar(ctx, 1)
    for lp in range(2):
        f.comps[lp][0][0] = one
        f.comps[lp][1][1] = one
    return f


def _t_map(ctx, i):
    """The connecting-map representative chi_{i,lam} -> chi_{3-i,lam}: project
    the second summand onto the first of the shifted complex."""
    f = _WinMap(ctx, i, 3 - i, 0)
    one = LaurentPoly.scalar(ctx, 1)
    for lp in range(2):
        f.comps[lp][0][1] = one
    return f


@dataclass
class StableAlgebra:
    dim: int
    labels: list
    table: dict  # (a, b) -> coefficient tuple over the labels

    def to_obj(self):
        return {
            "dim": self.dim,
            "labels": self.labels,
            "table": {f"{a}*{b}": list(v) for (a, b), v in sorted(self.table.items())},
        }


def _r_reference_table(ctx):
    """Structure constants of R on the basis (e1, e2, Te1, Te2) via the
    regular representation."""
    reg = std_proj(ctx, 1).direct_sum(std_proj(ctx, 2))
    # basis order of the regular module: (e1, Te1, e2, Te2)
    vecs = {
        "e1": [1, 0, 0, 0],
        "Te1": [0, 1, 0, 0],
        "e2": [0, 0, 1, 0],
        "Te2": [0, 0, 0, 1],
    }
    mats = {
        "e1": reg.g("e1"),
        "e2": reg.g("e2"),
        "T": reg.g("T"),
    }

    def left_mult(name):
        if name in ("e1", "e2"):
            return mats[name]
        # Te_i = T . e_i
        i = name[-1]
        return mat_mul(ctx, mats["T"], mats[f"e{i}"])

    labels = ["e1", "e2", "Te1", "Te2"]
    table = {}
    back = {tuple(v): k for k, v in vecs.items()}
    for a in labels:
        La = left_mult(a)
        for b in labels:
            out = mat_vec(ctx, La, vecs[b])
            coeffs = []
            for lbl in labels:
                # coordinates in the regular basis directly give coefficients
                idx = vecs[lbl].index(1)
                coeffs.append(out[idx])
            table[(a, b)] = tuple(coeffs)
    return labels, table


def stable_endo_supersingular(tctx, orbit, lam_idx, zwin=3):
    """Structure constants of the stable endomorphism algebra of the
    supersingular module at lambda, compared against R.

    The four stable-hom dimensions are computed independently (all 1); the
    basis classes and the multiplication table use explicit 2-periodic chain
    representatives on the totalised resolutions, with products certified by
    explicit homotopies.
    """
    ctx = tctx.field
    if lam_idx == 0:
        raise ZeroLambda("lambda must be nonzero")
    if orbit is not None and not orbit.regular:
        raise ComparisonFailure("stable endomorphism computation needs a regular orbit")
    # dimensions via the finite Ext computation
    dims = {(i, j): stable_hom_S(ctx, i, j, lam_idx) for i in (1, 2) for j in (1, 2)}
    if any(v != 1 for v in dims.values()):
        raise ComparisonFailure(f"stable hom dimensions {dims} != 1")

    maps = {
        "e1": ("grid", 1, 1, _identity_map(ctx, 1)),
        "e2": ("grid", 2, 2, _identity_map(ctx, 2)),
        "Te1": ("grid", 1, 2, _t_map(ctx, 1)),
        "Te2": ("grid", 2, 1, _t_map(ctx, 2)),
    }
    # chain-map property
    for name, (_, i, j, f) in maps.items():
        if not _chain_defect(f, lam_idx).is_zero():
            raise ComparisonFailure(f"{name} representative is not a chain map")
    # slot-wise boundary spans and nonvanishing of the basis classes
    spans = {}
    for i in (1, 2):
        for j in (1, 2):
            spans[(i, j)], win = _boundary_span(ctx, i, j, lam_idx, zwin)
    for name, (_, i, j, f) in maps.items():
        zlo, zhi = -(zwin + 1), zwin + 1
        if spans[(i, j)].contains(f.vector(zlo, zhi)):
            raise ComparisonFailure(f"{name} is null-homotopic")

    labels, ref = _r_reference_table(ctx)
    zlo, zhi = -(zwin + 1), zwin + 1
    table = {}
    for a in labels:
        _, ia, ja, fa = maps[a]
        for b in labels:
            _, ib, jb, fb = maps[b]
            # product a.b = compose a after b: defined when jb == ia; otherwise 0
            expected = ref[(a, b)]
            if jb == ia:
                prod = _win_compose(fa, fb)
                # subtract the expected combination living in slot (ib -> ja)
                exp_map = _WinMap(ctx, ib, ja, 0)
                for coeff, lbl in zip(expected, labels):
                    if coeff:
                        _, il, jl, fl = maps[lbl]
                        if (il, jl) != (ib, ja):
                            raise ComparisonFailure(
                                f"expected product {a}*{b} lands in a different slot"
                            )
                        exp_map = exp_map.add(fl.scal(coeff))
                diff = prod.sub(exp_map)
                if not diff.is_zero() and not spans[(ib, ja)].contains(diff.vector(zlo, zhi)):
                    raise ComparisonFailure(f"product {a}*{b} disagrees with R")
            else:
                if any(expected):
                    raise ComparisonFailure(f"product {a}*{b}: slot mismatch against R")
            table[(a, b)] = expected
    stable_labels = ["e1~", "e2~", "t1~", "t2~"]
    stable_table = {
        (stable_labels[labels.index(a)], stable_labels[labels.index(b)]): v
        for (a, b), v in table.items()
    }
    return StableAlgebra(4, stable_labels, stable_table)


# -- A-side Ext (two lines through the origin) ----------------------------------


def ext_nodal_line(ctx, which, jdeg, D):
    """Per-X-degree dims of Ext^j_A(M, M) for M = A/X_which A, truncated at D.

    The 2-periodic free resolution of M alternates right multiplication by
    X_which and by the other variable; the induced maps on M are computed by
    multiplying in A and reducing modulo X_which.  All differentials have
    degree <= 1, so the reported dims (degrees <= D-1) are exact.
    """
    from .rings import NodalPoly

    other = 2 if which == 1 else 1

    def to_class(pol: NodalPoly):
        """Reduce mod X_which A: keep the constant and the other tail."""
        tail = pol.tail2 if other == 2 else pol.tail1
        return [pol.c0] + list(tail)

    def basis_elt(d):
        return NodalPoly.mono(ctx, other, d) if d else NodalPoly.scalar(ctx, 1)

    def step_multiplier(step):
        # d_1 = . X_which, d_2 = . X_other, alternating
        branch = which if step % 2 == 1 else other
        return NodalPoly.mono(ctx, branch, 1)

    def map_matrix(step):
        """(D+1) x (D+1) matrix of the induced map on the truncation of M."""
        mult = step_multiplier(step)
        A = zeros(D + 1, D + 1)
        for d in range(D + 1):
            img = to_class(basis_elt(d).mul(mult))
            for r, c in enumerate(img):
                if c and r <= D:
                    A[r][d] = c
        return A

    delta_j = map_matrix(jdeg + 1)
    delta_prev = map_matrix(jdeg) if jdeg >= 1 else None
    out = []
    for d in range(D):
        # graded pieces are 1-dimensional; read the maps degree by degree
        ker = 1 if all(delta_j[r][d] == 0 for r in range(D + 1)) else 0
        img = 0
        if delta_prev is not None and d >= 1:
            img = 1 if any(delta_prev[d][c] != 0 for c in range(D + 1)) else 0
        out.append(ker - img)
    return out


def ext_nodal_line_total(ctx, which, jdeg, D):
    return sum(ext_nodal_line(ctx, which, jdeg, D))


# -- restrictions of the spherical specialisations (SL2 bookkeeping) ------------


def sl2_spherical_restrictions(ctx, which, D):
    """Truncated restrictions of the spherical specialisation at M_which.

    M_1 = A/X2 A and M_2 = A/X1 A; the module is (M_which)^2 with the
    reflection generators acting through (0 X1; X2 0) and (0 X2; X1 0).
    Returns the restriction to the two vertex algebras (T = first reflection,
    T = second reflection); both are R-modules of dimension 2(D+1).

    Truncation injects one extra one-dimensional summand at the top degree.
    """
    n = 2 * (D + 1)

    def idx(coord, deg):
        return coord * (D + 1) + deg

    e1 = zeros(n, n)
    e2 = zeros(n, n)
    for d in range(D + 1):
        e1[idx(0, d)][idx(0, d)] = 1
        e2[idx(1, d)][idx(1, d)] = 1

    def refl_matrix(upper_branch):
        """(f, g) -> (X_a g, X_b f) with (a, b) = (1, 2) or (2, 1), reduced
        modulo the killed variable and truncated at degree D."""
        a, b = (1, 2) if upper_branch == 1 else (2, 1)
        A = zeros(n, n)
        live = which  # the surviving variable of M_which: X_which acts as shift
        for d in range(D + 1):
            # component X_a . g into the first coordinate
            if a == live and d + 1 <= D:
                A[idx(0, d + 1)][idx(1, d)] = 1
            # component X_b . f into the second coordinate
            if b == live and d + 1 <= D:
                A[idx(1, d + 1)][idx(0, d)] = 1
        return A

    res_x0 = FDModule(AlgebraKind.R, ctx, n, {"e1": e1, "e2": e2, "T": refl_matrix(1)})
    res_x1 = FDModule(AlgebraKind.R, ctx, n, {"e1": e1, "e2": e2, "T": refl_matrix(2)})
    return res_x0, res_x1


def supersingular_restriction_splits(tctx, module):
    """The restriction of M_{gamma,lambda} to the vertex algebra is
    chi_{1,lambda} (+) chi_{2,lambda}: reflections act by zero, the torus acts
    diagonally through the two orbit characters, and Z acts by lambda."""
    ctx = tctx.field
    if module.dim != 2:
        return False
    if not is_zero_mat(module.mats["Ts0"]):
        return False
    om = module.mats["Tomega"]
    om2 = mat_mul(ctx, om, om)
    lam = module.lam_idx
    if om2 != [[lam, 0], [0, lam]]:
        return False
    xi, xi_tw = module.orbit.pair()
    from .torus import TorusElt

    t = TorusElt(module.kind, tctx.q, (1, 0))
    tm = module.torus_matrix(t)
    return tm[0][0] == xi.eval_i(tctx, t) and tm[1][1] == xi_tw.eval_i(tctx, t)


# -- infinite projective dimension detection ------------------------------------


def infinite_pd_detect(tctx, item):
    """(infinite_pd, support_point) for the catalogued periodic family.

    Items: ("chi_lambda", i, lam_idx), ("supersingular", module),
    ("a_side", 1|2), ("R_module", FDModule).  Anything else raises
    OutsideCatalogue.
    """
    ctx = tctx.field
    if not isinstance(item, tuple) or not item:
        raise OutsideCatalogue(f"not catalogued: {item!r}")
    tag = item[0]
    if tag == "chi_lambda":
        _, i, lam_idx = item
        pattern = [ext_S_specialized(ctx, i, i, lam_idx, n) for n in range(1, 5)]
        infinite = any(pattern) and pattern[0] == pattern[2] and pattern[1] == pattern[3]
        return infinite, {"x1": 0, "x2": 0, "z": lam_idx}
    if tag == "supersingular":
        module = item[1]
        lam = module.lam_idx
        pattern = [
            ext_S_specialized(ctx, 1, 1, lam, n) + ext_S_specialized(ctx, 2, 2, lam, n)
            for n in range(1, 5)
        ]
        infinite = any(pattern) and pattern[0] == pattern[2] and pattern[1] == pattern[3]
        return infinite, {"orbit": module.orbit.to_obj() if module.orbit else None,
                          "x1": 0, "x2": 0, "z": lam}
    if tag == "a_side":
        which = item[1]
        e2 = ext_nodal_line_total(ctx, which, 2, 8)
        e3 = ext_nodal_line_total(ctx, which, 3, 8)
        e4 = ext_nodal_line_total(ctx, which, 4, 8)
        infinite = e2 != 0 and e4 != 0
        if (e2, e3, e4) != (1, 0, 1):
            raise OutsideCatalogue("periodic pattern broken; input outside catalogue")
        return infinite, {"x1": 0, "x2": 0}
    if tag == "R_module":
        M = item[1]
        d = decompose(M)
        pattern = [ext_group(M, M, n) for n in range(1, 4)]
        infinite = d.a1 + d.a2 > 0
        if infinite != any(pattern):
            raise OutsideCatalogue("Ext pattern disagrees with classification")
        return infinite, ({"x1": 0, "x2": 0} if infinite else None)
    raise OutsideCatalogue(f"not catalogued: {tag}")
