from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckelab.errors import (
    CompositeCharacteristic,
    CtxMismatch,
    ReducibleModulus,
    ZeroInverse,
)
from heckelab.gf import FieldCtx, field_arith, field_create, field_generator


def test_prime_field_modulus_is_x():
    ctx = field_create(3)
    assert ctx.q == 3
    assert ctx.modulus == (0, 1)


def test_f9_default_modulus_is_x2_plus_1():
    # X^2 + 1 has no root mod 3: exhaustive check is the oracle
    for a in range(3):
        assert (a * a + 1) % 3 != 0
    ctx = field_create(3, 2)
    assert ctx.modulus == (1, 0, 1)
    assert ctx.q == 9


def test_composite_characteristic_rejected():
    with pytest.raises(CompositeCharacteristic):
        field_create(4)


def test_reducible_modulus_rejected():
    # X^2 + 2 = X^2 - 1 = (X-1)(X+1) over F_3
    with pytest.raises(ReducibleModulus):
        field_create(3, 2, [2, 0, 1])


@pytest.mark.parametrize(
    "p,m,expected_gen",
    [(3, 1, (2,)), (5, 1, (2,)), (2, 1, (1,))],
)
def test_generator_examples(p, m, expected_gen):
    ctx = field_create(p, m)
    g = field_generator(ctx)
    assert g.coords == expected_gen
    # brute-force order check over all exponents
    seen = set()
    x = ctx.one()
    for _ in range(ctx.q - 1):
        x = x * g
        seen.add(x.i)
    assert len(seen) == ctx.q - 1


def test_generator_order_no_proper_divisor():
    for p, m in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        ctx = field_create(p, m)
        g = field_generator(ctx)
        n = ctx.q - 1
        for d in range(1, n):
            if n % d == 0:
                assert (g**d).i != 1 or d == n
        assert (g**n).i == 1


def test_inverse_example_f3():
    ctx = field_create(3)
    two = ctx.scalar(2)
    assert field_arith(two, None, "inv") == two  # 2*2 = 4 = 1 mod 3


def test_inv_zero_raises():
    ctx = field_create(5)
    with pytest.raises(ZeroInverse):
        field_arith(ctx.zero(), None, "inv")


def test_ctx_mismatch():
    a = field_create(3).one()
    b = field_create(5).one()
    with pytest.raises(CtxMismatch):
        a + b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_f9_field_axioms(i, j):
    ctx = field_create(3, 2)
    x, y = ctx.elt(i), ctx.elt(j)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    if not x.is_zero():
        assert x * x.inverse() == ctx.one()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_frobenius_additive(i, j):
    ctx = field_create(3, 2)
    x, y = ctx.elt(i), ctx.elt(j)
    p = ctx.p
    assert (x + y) ** p == x**p + y**p


def test_lagrange_pow():
    for p, m in [(5, 1), (3, 2)]:
        ctx = field_create(p, m)
        g = field_generator(ctx)
        assert g ** (ctx.q - 1) == ctx.one()


def test_subfield_indices():
    ctx = field_create(3, 2)
    sub = ctx.subfield_indices(3)
    assert len(sub) == 3
    assert set(sub) == {0, 1, 2}


def test_serialisation_round_trip():
    ctx = field_create(3, 2)
    x = ctx.from_coords((2, 1))
    assert x.to_obj() == [2, 1]
    assert ctx.to_obj() == {"p": 3, "m": 2, "modulus": [1, 0, 1]}
    assert ctx.from_coords(x.to_obj()) == x


def test_q_minus_one_not_divisible_by_p():
    for p, m in [(2, 3), (3, 2), (5, 1), (7, 1)]:
        ctx = field_create(p, m)
        assert (ctx.q - 1) % p != 0
