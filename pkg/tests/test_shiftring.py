import random

import pytest
from hypothesis import given, strategies as st

import oracles as O
from conftest import scenario
from orekit.errors import ZeroInput
from orekit.ore import nilpotency_search
from orekit.shiftring import (EvScalarMat, ShiftRing, ShiftSigma, ev_add, ev_mul,
                              nilpotent_ideal_certificate, non_surjectivity_witness,
                              prime_witness, shift_context, shift_preimage, shift_sigma)

P = 2
R = ShiftRing(P)
SIZE = 6


@st.composite
def elements(draw, max_n=3):
    n = draw(st.integers(0, max_n))
    block = [[draw(st.integers(0, P - 1)) for _ in range(n)] for _ in range(n)]
    return EvScalarMat(P, block, draw(st.integers(0, P - 1)))


def corner(a, size=SIZE):
    return O.dense_shift_matrix(a.block, a.tail, size, P)


class TestArithmetic:
    @given(elements(), elements())
    def test_matches_dense_corner(self, a, b):
        assert corner(ev_mul(a, b)) == O.dense_matmul(corner(a), corner(b), P)
        assert corner(ev_add(a, b)) == [[(x + y) % P for x, y in zip(r, s)]
                                        for r, s in zip(corner(a), corner(b))]
        assert (a * b).tail == a.tail * b.tail % P

    @given(elements(), elements(), elements())
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * R.one == a == R.one * a
        assert a - a == R.zero

    def test_examples(self):
        a = R.one + R.unit(1, 2)
        b = R.one + R.unit(2, 1)
        assert str(a * b) == "1+e11+e12+e21"
        assert R.unit(1, 1) * R.unit(2, 2) == R.zero
        assert R.one * a == a

    def test_canonical_block(self):
        a = EvScalarMat(P, [[1, 0], [0, 1]], 1)
        assert a == R.one and a.n == 0
        assert R.unit(1, 2).entry(1, 2) == 1 and R.unit(1, 2).entry(2, 1) == 0

    def test_rendering(self):
        assert str(R.unit(1, 1)) == "e11"
        assert str(R.one + R.unit(1, 2)) == "1+e12"
        # units are 1-based; the identity shows as the tail
        assert str(shift_sigma(R.one + R.unit(1, 2))) == "1+e23"
        assert str(EvScalarMat(P, [[1, 1], [1, 0]], 1)) == "1+e12+e21+e22"
        assert str(R.zero) == "0"

    def test_integer_scaling(self):
        assert R.unit(1, 1) * 3 == R.unit(1, 1)
        assert R.unit(1, 1) * 2 == R.zero


class TestShift:
    @given(elements())
    def test_matches_dense_shift(self, a):
        assert corner(shift_sigma(a)) == O.dense_shift(corner(a), a.tail, P)

    @given(elements(), elements())
    def test_is_ring_map(self, a, b):
        assert shift_sigma(a * b) == shift_sigma(a) * shift_sigma(b)
        assert shift_sigma(a + b) == shift_sigma(a) + shift_sigma(b)
        assert shift_sigma(R.one) == R.one

    @given(elements())
    def test_preimage(self, a):
        assert shift_preimage(shift_sigma(a)) == a
        pre = shift_preimage(a)
        if pre is not None:
            assert shift_sigma(pre) == a
        # the image is exactly the elements with row/column 1 equal to (tail, 0, ...)
        c = corner(a)
        in_image = c[0] == [a.tail] + [0] * (SIZE - 1) and all(r[0] == 0 for r in c[1:])
        assert (pre is not None) == in_image

    def test_examples(self):
        assert shift_sigma(R.unit(1, 1)) == R.unit(2, 2)
        # tail 1 feeds the (1,1) slot
        assert str(shift_sigma(EvScalarMat(P, [[0]], 1))) == "1+e22"
        assert shift_preimage(R.unit(1, 1)) is None

    def test_verify(self):
        assert ShiftSigma(R).verify(3)

    def test_non_surjective(self):
        assert non_surjectivity_witness(R, 100, 0)


class TestPrimeness:
    def test_witness(self):
        rng = random.Random(0)
        for _ in range(100):
            a, b = R.random_nonzero(rng), R.random_nonzero(rng)
            r = prime_witness(a, b)
            assert a * r * b

    def test_examples(self):
        e11 = R.unit(1, 1)
        assert prime_witness(e11, e11) == e11
        r = prime_witness(R.unit(1, 2), R.unit(3, 4))
        assert r == R.unit(2, 3)
        assert R.unit(1, 2) * r * R.unit(3, 4) == R.unit(1, 4)
        tail_only = EvScalarMat(P, [], 1)
        r = prime_witness(tail_only, e11)
        assert tail_only * r * e11

    def test_zero_input(self):
        with pytest.raises(ZeroInput):
            prime_witness(R.zero, R.one)


class TestNilpotentIdeal:
    def test_e11_x_squares_to_zero_against_dense_model(self):
        # e11 x r e11 = e11 sigma(r) e22 x, and row 1 of a shift is (tail, 0, 0, ...)
        ctx = shift_context(P)
        E = ctx.const(R.unit(1, 1))
        for r in R.spanning_set(3):
            row1 = corner(shift_sigma(r))[0]
            assert row1 == [r.tail] + [0] * (SIZE - 1)
            assert not (E * ctx.x * ctx.const(r) * E)
        w = E * ctx.x
        assert not (w * ctx.const(R.unit(2, 2)) * w)

    def test_search_finds_e11_x(self):
        w = nilpotency_search(scenario("shift-ring").ctx, 2, 10000)
        assert str(w) == "e11*x"

    def test_certificate(self):
        cert = nilpotent_ideal_certificate(k_max=4, budget=50, seed=1, max_degree=3)
        assert cert.ok
        assert set(cert.clauses) == {"e11 x R x^k e11 = 0", "square-zero products",
                                     "e11 sigma(R) = F_p e11"}

    def test_other_prime(self):
        assert nilpotent_ideal_certificate(k_max=2, budget=20, p=3, max_degree=2).ok
