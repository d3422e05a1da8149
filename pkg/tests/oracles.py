"""Independent oracles shared by the unit and acceptance suites.

These deliberately avoid the library's own decomposition path: submodules are
found by enumerating cyclic generators, indecomposable types are recognised by
dimension signatures, and decompositions are found by backtracking search.
"""

from __future__ import annotations

from heckelab.linalg import Span, mat_vec, rank


def brute_force_counts(M):
    """(a1, a2, b1, b2) by exhaustive cyclic-submodule search (dim <= 4)."""
    ctx, n = M.ctx, M.dim

    def all_vecs(k):
        if k == 0:
            yield []
            return
        for rest in all_vecs(k - 1):
            for c in range(ctx.q):
                yield rest + [c]

    subs = {}
    for v in all_vecs(n):
        if all(c == 0 for c in v):
            continue
        gens = [v]
        for g in ("e1", "e2", "T"):
            gens.append(mat_vec(ctx, M.g(g), v))
        gens.append(mat_vec(ctx, M.g("T"), mat_vec(ctx, M.g("e1"), v)))
        gens.append(mat_vec(ctx, M.g("T"), mat_vec(ctx, M.g("e2"), v)))
        span = Span(ctx, n)
        basis = []
        for w in gens:
            if span.add(w):
                basis.append(w)
        key = tuple(tuple(r) for r in span.rows)
        if key not in subs:
            subs[key] = basis

    def signature(basis):
        k = len(basis)
        cols = lambda mat: [mat_vec(ctx, mat, b) for b in basis]
        dim_e1 = rank(ctx, cols(M.g("e1")))
        dim_T = rank(ctx, cols(M.g("T")))
        tm = cols(M.g("T"))
        sp = Span(ctx, n)
        for w in tm:
            sp.add(w)
        top_e1 = 0
        for b in cols(M.g("e1")):
            if sp.add(b):
                top_e1 += 1
        return (k, dim_e1, top_e1, dim_T)

    # signatures of the four indecomposables; decomposable cyclic modules
    # (e.g. chi1 (+) chi2, with T-rank 0) fall through and are discarded
    sig_to_type = {
        (1, 1, 1, 0): "chi1",
        (1, 0, 0, 0): "chi2",
        (2, 1, 1, 1): "Re1",
        (2, 1, 0, 1): "Re2",
    }
    items = []
    for key, basis in subs.items():
        typ = sig_to_type.get(signature(basis))
        if typ:
            items.append((basis, typ))

    best = None

    def search(chosen_span, counts, start):
        nonlocal best
        if best is not None:
            return
        if chosen_span.dim == n:
            best = counts
            return
        for idx in range(start, len(items)):
            basis, typ = items[idx]
            test = chosen_span.copy()
            if all(test.add(b) for b in basis):
                c2 = dict(counts)
                c2[typ] = c2.get(typ, 0) + 1
                search(test, c2, idx)
                if best is not None:
                    return

    search(Span(ctx, n), {}, 0)
    assert best is not None, "no decomposition found by brute force"
    return (
        best.get("chi1", 0),
        best.get("chi2", 0),
        best.get("Re1", 0),
        best.get("Re2", 0),
    )


def random_scrambled_module(ctx, rng, max_dim=6):
    """A random direct sum of indecomposables in a random basis, with its
    multiplicity ground truth."""
    from heckelab.fdmod import std_module
    from heckelab.linalg import inverse

    counts = [0, 0, 0, 0]
    dim = 0
    while True:
        pick = rng.randrange(4)
        add = 1 if pick < 2 else 2
        if dim + add > max_dim:
            break
        counts[pick] += 1
        dim += add
        if dim == max_dim or rng.random() < 0.2:
            break
    if dim == 0:
        counts[0] = 1
    M = std_module(ctx, *counts)
    while True:
        C = [[rng.randrange(ctx.q) for _ in range(M.dim)] for _ in range(M.dim)]
        if inverse(ctx, C) is not None:
            break
    return M.conjugate(C), tuple(counts)
