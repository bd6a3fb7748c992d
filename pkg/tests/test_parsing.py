import pytest

from conftest import scenario
from orekit.jordan import JordanRing
from orekit.parsing import ParseError, parse_ring_element, parse_scalar, parse_skew, parse_tower
from orekit.scalars import RationalFunctionField, prime_field


def test_scalars():
    K = RationalFunctionField(5)
    t = K.t
    assert parse_scalar(K, "(t^2+1)/t^4") == (t * t + 1) / t ** 4
    assert parse_scalar(K, "t**2 - t") == t * t - t
    assert parse_scalar(prime_field(7), "3/5") == prime_field(7)(3) / prime_field(7)(5)


def test_ring_elements():
    sc = scenario("f2-swap")
    assert parse_ring_element(sc.ring, "(1, 2)") == sc.ring.from_literal([1, 2])
    m2 = scenario("f3-m2-inner").ring
    assert parse_ring_element(m2, "[[0, 1], [0, 0]]") == m2.matrix_unit(0, 0, 1)
    shift = scenario("shift-ring").ring
    assert parse_ring_element(shift, "e12 + e(3,3)") == shift.unit(1, 2) + shift.unit(3, 3)


def test_skew_order_matters():
    ctx = scenario("f1-field").ctx
    assert str(parse_skew(ctx, "x*t")) == "t^2*x + (t^2-t)"
    assert str(parse_skew(ctx, "t*x")) == "t*x"
    assert parse_skew(ctx, "x^2 - 1") == ctx.x ** 2 - ctx.one


def test_skew_over_product_and_shift():
    sc = scenario("f2-swap")
    p = parse_skew(sc.ctx, "(1,0)*x + (0,2)")
    assert p == sc.ctx.poly([sc.ring.from_literal([0, 2]), sc.ring.from_literal([1, 0])])
    sh = scenario("shift-ring")
    assert str(parse_skew(sh.ctx, "e11*x")) == "e11*x"


def test_tower():
    sc = scenario("tower")
    J = JordanRing(sc.ring, sc.sigma)
    assert parse_tower(J, "(2,t^2)").pair() == "(1,t)"
    assert parse_tower(J, "t+1").level == 0


@pytest.mark.parametrize("text", ["x +", "y", "t^t", "import os", "(-1, t)"])
def test_errors(text):
    sc = scenario("tower")
    J = JordanRing(sc.ring, sc.sigma)
    with pytest.raises((ParseError, ValueError)):
        if text.startswith("("):
            parse_tower(J, text)
        else:
            parse_skew(sc.ctx, text)
