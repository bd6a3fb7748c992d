import itertools

import pytest
from hypothesis import given, strategies as st

import oracles as O
from conftest import dense, from_pair, to_pair
from orekit.errors import DegreeCapExceeded, NotAUnit, ZeroDenominator
from orekit.scalars import (FieldEndo, FieldSigmaDeriv, Poly, RationalFunctionField,
                            is_prime, poly_gcd, prime_field, ratfn_normalize,
                            verify_quantization)

P = 5
K = RationalFunctionField(P)

coeff_lists = st.lists(st.integers(0, P - 1), max_size=6)
nonzero_lists = coeff_lists.filter(lambda c: any(c))


def poly(c):
    return Poly.from_dense(c, P)


def ratfns(max_len=4):
    return st.tuples(st.lists(st.integers(0, P - 1), max_size=max_len),
                     st.lists(st.integers(0, P - 1), min_size=1, max_size=max_len)
                     .filter(lambda c: any(c))).map(lambda nd: O.rat(nd[0], nd[1], P))


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**31 - 1)


class TestPrimeField:
    def test_arithmetic(self):
        F = prime_field(7)
        a, b = F(3), F(5)
        assert a + b == F(1)
        assert a * b == F(1)
        assert a / b == F(3 * 3)
        assert -a == F(4)
        assert a ** 6 == F.one
        assert a.inverse() * a == F.one

    def test_zero_inverse(self):
        with pytest.raises(ZeroDivisionError):
            prime_field(3)(0).inverse()

    def test_elements(self):
        assert len(list(prime_field(3).elements())) == 3


class TestPoly:
    @given(coeff_lists, coeff_lists)
    def test_add_mul_match_dense(self, a, b):
        assert dense(poly(a) + poly(b)) == tuple(O.padd(a, b, P))
        assert dense(poly(a) * poly(b)) == tuple(O.pmul(O.trim(a), O.trim(b), P))

    @given(coeff_lists, nonzero_lists)
    def test_divmod_matches_dense(self, a, b):
        q, r = poly(a).divmod(poly(b))
        oq, orr = O.pdivmod(a, b, P)
        assert dense(q) == tuple(oq)
        assert dense(r) == tuple(orr)
        assert q * poly(b) + r == poly(a)

    @given(coeff_lists, coeff_lists)
    def test_gcd_matches_dense(self, a, b):
        assert dense(poly_gcd(poly(a), poly(b))) == tuple(O.pgcd(a, b, P))

    def test_str(self):
        assert str(poly([0, -1, 1])) == "t^2-t"
        assert str(Poly.zero(P)) == "0"

    def test_degree_cap(self):
        with pytest.raises(DegreeCapExceeded):
            Poly.monomial(1, 5000, P)

    def test_derivative_char_p(self):
        assert not poly([0, 0, 0, 0, 0, 1]).derivative()


class TestRatFn:
    @given(ratfns())
    def test_normal_form_matches_oracle(self, pair):
        common = poly([1, 1])
        f = ratfn_normalize(poly(list(pair[0])) * common, poly(list(pair[1])) * common, K)
        assert to_pair(f) == pair
        assert f.den.lc() == 1

    @given(ratfns(), ratfns())
    def test_field_ops_match_oracle(self, f, g):
        a, b = from_pair(K, f), from_pair(K, g)
        assert to_pair(a + b) == O.radd(f, g, P)
        assert to_pair(a - b) == O.rsub(f, g, P)
        assert to_pair(a * b) == O.rmul(f, g, P)
        if g[0]:
            assert to_pair(a / b) == O.rdiv(f, g, P)

    @given(ratfns())
    def test_inverse(self, f):
        a = from_pair(K, f)
        if a:
            assert a * a.inverse() == K.one
        else:
            with pytest.raises((ZeroDivisionError, NotAUnit)):
                a.inverse()

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            ratfn_normalize(poly([1]), Poly.zero(P), K)

    def test_example_normal_form(self):
        t = K.t
        f = (t * t - 1) / (2 * t - 2)
        assert str(f) == "-2*t-2"  # symmetric residues
        assert f == (t + 1) / 2


class TestFieldEndo:
    @given(ratfns(), st.integers(1, 4), st.integers(1, 3))
    def test_matches_substitution(self, f, c, k):
        phi = FieldEndo(K, c, k)
        assert to_pair(phi(from_pair(K, f))) == O.rsigma(f, k, P, c)

    @given(ratfns(), ratfns())
    def test_multiplicative(self, f, g):
        phi = FieldEndo(K, 1, 2)
        a, b = from_pair(K, f), from_pair(K, g)
        assert phi(a * b) == phi(a) * phi(b)
        assert phi(a + b) == phi(a) + phi(b)

    def test_preimage_against_enumeration(self):
        # every element of height <= 2 over F_3, pushed through t -> 2 t^2
        p = 3
        F = RationalFunctionField(p)
        phi = FieldEndo(F, 2, 2)
        image = {}
        for pair in O.all_rat_with_height(p, 2):
            image[O.rsigma(pair, 2, p, 2)] = pair
        for pair in O.all_rat_with_height(p, 2):
            f = from_pair(F, pair)
            got = phi.preimage(f)
            want = image.get(pair)
            assert (None if got is None else to_pair(got)) == want

    def test_preimage_examples(self):
        phi = FieldEndo(K, 1, 2)
        t = K.t
        assert phi.preimage(t ** 4 + 1) == t ** 2 + 1
        assert phi.preimage(t) is None

    def test_surjectivity_flags(self):
        assert FieldEndo(K, 2, 1).is_surjective
        assert not FieldEndo(K, 1, 2).is_surjective

    def test_compose(self):
        a, b = FieldEndo(K, 2, 1), FieldEndo(K, 1, 2)
        f = K.random(__import__("random").Random(3), 2)
        assert a.compose(b)(f) == a(b(f))
        assert b.power(3)(K.t) == K.t ** 8

    def test_prime_field_rejects_nontrivial(self):
        with pytest.raises(ValueError):
            FieldEndo(prime_field(5), 1, 2)


class TestFieldSigmaDeriv:
    @pytest.mark.parametrize("c,k,dt", [(1, 2, [0, -1, 1]), (2, 1, [1]), (1, 1, [1]),
                                        (1, 3, [2, 0, 1]), (1, 1, [0, 0, 1])])
    @given(f=ratfns(3))
    def test_matches_leibniz_recursion(self, c, k, dt, f):
        sigma = FieldEndo(K, c, k)
        dtv = from_pair(K, O.rat(dt, [1], P))
        delta = FieldSigmaDeriv(sigma, dtv)
        want = O.delta_rat(f, k, O.rat(dt, [1], P), P, c)
        assert to_pair(delta(from_pair(K, f))) == want

    def test_example_values(self):
        t = K.t
        delta = FieldSigmaDeriv(FieldEndo(K, 1, 2), t * t - t)
        assert delta(t) == t * t - t
        assert delta(t * t) == t ** 4 - t ** 2
        assert delta(K.one) == K.zero

    def test_zero_on_prime_field(self):
        F = prime_field(3)
        d = FieldSigmaDeriv(FieldEndo(F), None)
        assert d.is_zero
        with pytest.raises(ValueError):
            FieldSigmaDeriv(FieldEndo(F), 1)


class TestQuantization:
    def test_unique_monic_quadratic(self):
        # δσ(t) = qσδ(t) for σ: t -> t^2 and q = 1, over all monic quadratics
        sols = []
        for a, b in itertools.product(range(P), repeat=2):
            dt = O.rat([b, a, 1], [1], P)
            if O.delta_poly([0, 0, 1], 2, dt, P) == O.rsigma(dt, 2, P):
                sols.append((a, b))
        assert sols == [(P - 1, 0)]
        sigma = FieldEndo(K, 1, 2)
        hits = [(a, b) for a, b in itertools.product(range(P), repeat=2)
                if verify_quantization(sigma, FieldSigmaDeriv(sigma, K.coerce(poly([b, a, 1]))),
                                       1)]
        assert hits == sols

    def test_known_pairs(self):
        t = K.t
        s1 = FieldEndo(K, 1, 2)
        assert verify_quantization(s1, FieldSigmaDeriv(s1, t * t - t), 1)
        assert not verify_quantization(s1, FieldSigmaDeriv(s1, t * t - t), 2)
        s2 = FieldEndo(K, 2, 1)
        assert verify_quantization(s2, FieldSigmaDeriv(s2, K.one), 2)
        assert not verify_quantization(s2, FieldSigmaDeriv(s2, K.one), 1)
