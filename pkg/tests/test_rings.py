from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from heckelab.gf import field_create
from heckelab.rings import LaurentPoly, Mat2, NodalLaurentPoly, NodalPoly

CTX = field_create(5)


def NP(c0=0, t1=(), t2=()):
    return NodalPoly(CTX, c0, t1, t2)


def test_x1_times_x2_is_zero():
    x1 = NodalPoly.mono(CTX, 1, 1)
    x2 = NodalPoly.mono(CTX, 2, 1)
    assert x1.mul(x2).is_zero()


def test_difference_of_squares():
    x1 = NodalPoly.mono(CTX, 1, 1)
    x2 = NodalPoly.mono(CTX, 2, 1)
    lhs = x1.add(x2).mul(x1.sub(x2))
    want = x1.mul(x1).sub(x2.mul(x2))  # X1^2 - X2^2
    assert lhs == want


def test_laurent_cross_term_kill():
    # (1 + X1) * (Z^{-1} X2) = Z^{-1} X2
    one_plus_x1 = NodalLaurentPoly(CTX, {0: NP(1, (1,))})
    zinv_x2 = NodalLaurentPoly.mono(CTX, 2, 1, zexp=-1)
    assert one_plus_x1.mul(zinv_x2) == zinv_x2


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_nodal_ring_axioms(data):
    def rand():
        c0 = data.draw(st.integers(0, 4))
        t1 = data.draw(st.lists(st.integers(0, 4), max_size=3))
        t2 = data.draw(st.lists(st.integers(0, 4), max_size=3))
        return NP(c0, t1, t2)

    a, b, c = rand(), rand(), rand()
    assert a.mul(b) == b.mul(a)
    assert a.mul(b.add(c)) == a.mul(b).add(a.mul(c))
    assert a.mul(b).mul(c) == a.mul(b.mul(c))


def test_evaluate_respects_node():
    pol = NP(2, (1, 3), (4,))  # 2 + X1 + 3X1^2 + 4X2
    # at X1=2, X2=0: 2 + 2 + 3*4 = 16 = 1 mod 5
    assert pol.evaluate(2, 0) == (2 + 2 + 12) % 5
    # at X1=0, X2=3: 2 + 12 = 14 = 4 mod 5
    assert pol.evaluate(0, 3) == (2 + 12) % 5


def test_mat2_identity_and_inverse_like():
    z = NodalLaurentPoly(CTX)
    one = NodalLaurentPoly.scalar(CTX, 1)
    zpow = NodalLaurentPoly.z_power(CTX, 1)
    zinv = NodalLaurentPoly.z_power(CTX, -1)
    tw = Mat2(CTX, [[z, zpow], [one, z]])
    twi = Mat2(CTX, [[z, one], [zinv, z]])
    assert tw.mul(twi) == Mat2.identity(CTX)
    assert tw.mul(tw).is_scalar()


def test_laurent_poly_ops():
    a = LaurentPoly(CTX, {0: 1, 2: 3})
    b = LaurentPoly(CTX, {-1: 2})
    assert a.mul(b) == LaurentPoly(CTX, {-1: 2, 1: 1})
    assert a.evaluate(2) == (1 + 3 * 4) % 5
    assert a.sub(a).is_zero()


def test_coeff_vector_window():
    a = NodalLaurentPoly(CTX, {1: NP(2, (1,), (0, 3))})
    v = a.coeff_vector(2, 0, 1)
    # window: z=0 block of 5 zeros, then z=1 block [c0, x1^1, x1^2, x2^1, x2^2]
    assert v == [0, 0, 0, 0, 0, 2, 1, 0, 0, 3]
