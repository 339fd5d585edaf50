"""Exact polynomial / rational-function arithmetic."""

from fractions import Fraction

import pytest

from leafstab.chart import ChartSpec
from leafstab.poly import Poly, RationalFunction, poly_exact_div, rf_op

from conftest import make_rng, random_rf


@pytest.fixture(scope="module")
def chart():
    return ChartSpec(("x1",), ("y1", "y2"))


def var(chart, name):
    return RationalFunction.var(chart, name)


def test_difference_of_squares(chart):
    x1, y1 = var(chart, "x1"), var(chart, "y1")
    assert (x1 + y1) * (x1 - y1) == x1 * x1 - y1 * y1


def test_additive_identity(chart):
    rng = make_rng(1)
    for _ in range(10):
        p = random_rf(rng, chart)
        assert rf_op(p, RationalFunction.zero(chart), "add") == p


def test_unreduced_quotient_evaluates(chart):
    x1 = Poly.var(chart, "x1")
    q = RationalFunction(x1 * x1 - Poly.const(chart, 1), x1 - Poly.const(chart, 1))
    assert q.evaluate({0: Fraction(3)}) == 4


def test_division_by_zero_raises(chart):
    one = RationalFunction.const(chart, 1)
    with pytest.raises(ZeroDivisionError):
        rf_op(one, RationalFunction.zero(chart), "div")
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Poly.var(chart, "x1"), Poly.zero(chart))


def test_partial_power_rule(chart):
    x1, y1 = Poly.var(chart, "x1"), Poly.var(chart, "y1")
    f = RationalFunction(x1 * x1 * y1)
    assert f.partial_name("x1") == RationalFunction((x1 * y1).scale(2))


def test_partial_constant_and_unknown_variable(chart):
    c = RationalFunction.const(chart, Fraction(7, 3))
    assert c.partial_name("x1").is_zero()
    with pytest.raises(ValueError):
        c.partial_name("nope")


def test_partial_quotient_rule(chart):
    x1 = Poly.var(chart, "x1")
    f = RationalFunction(Poly.const(chart, 1), x1)
    expected = RationalFunction(-Poly.const(chart, 1), x1 * x1)
    assert f.partial_name("x1") == expected


def test_substitute_fiber_basic(chart):
    # f = x1 + y1^2 with y1 -> x1 gives x1 + x1^2
    x1, y1 = Poly.var(chart, "x1"), Poly.var(chart, "y1")
    f = RationalFunction(x1 + y1 * y1)
    out = f.substitute_fiber({0: x1, 1: Poly.zero(chart)})
    assert out == RationalFunction(x1 + x1 * x1)


def test_substitute_fiber_independent(chart):
    f = RationalFunction(Poly.var(chart, "x1") ** 3)
    out = f.substitute_fiber({0: Poly.const(chart, 5), 1: Poly.zero(chart)})
    assert out == f


def test_substitute_fiber_product(chart):
    # y1*y2 with (x1, -x1) gives -x1^2
    y1, y2, x1 = (Poly.var(chart, n) for n in ("y1", "y2", "x1"))
    f = RationalFunction(y1 * y2)
    out = f.substitute_fiber({0: x1, 1: -x1})
    assert out == RationalFunction(-(x1 * x1))


def test_substitute_fiber_rejects_fiber_in_substitution(chart):
    f = RationalFunction(Poly.var(chart, "y1"))
    with pytest.raises(ValueError):
        f.substitute_fiber({0: Poly.var(chart, "y2"), 1: Poly.zero(chart)})


def test_ring_axioms_randomized(chart):
    rng = make_rng(2)
    for _ in range(40):
        a, b, c = (random_rf(rng, chart) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_mixed_partials_commute(chart):
    rng = make_rng(3)
    for _ in range(25):
        f = random_rf(rng, chart)
        for u, v in ((0, 1), (1, 2), (0, 2)):
            assert f.partial(u).partial(v) == f.partial(v).partial(u)


def test_substitution_is_ring_homomorphism(chart):
    rng = make_rng(4)
    x1 = Poly.var(chart, "x1")
    subs = {0: x1 + Poly.const(chart, 1), 1: -x1}
    for _ in range(25):
        f, g = random_rf(rng, chart), random_rf(rng, chart)
        lhs = (f * g).substitute_fiber(subs)
        assert lhs == f.substitute_fiber(subs) * g.substitute_fiber(subs)
        assert (f + g).substitute_fiber(subs) == f.substitute_fiber(subs) + g.substitute_fiber(subs)


def test_equality_by_cross_multiplication(chart):
    x1 = Poly.var(chart, "x1")
    one = Poly.const(chart, 1)
    # (x1^2 - 1)/(x1 - 1) equals (x1 + 1)/1 without any GCD reduction
    a = RationalFunction(x1 * x1 - one, x1 - one)
    b = RationalFunction(x1 + one)
    assert a == b


def test_poly_exact_division(chart):
    x1, y1 = Poly.var(chart, "x1"), Poly.var(chart, "y1")
    product = (x1 + y1) * (x1 - y1)
    assert poly_exact_div(product, x1 + y1) == x1 - y1
    with pytest.raises(ValueError):
        poly_exact_div(x1 * x1 + Poly.const(chart, 1), x1 + y1)


def test_chart_validation():
    with pytest.raises(ValueError):
        ChartSpec(())
    with pytest.raises(ValueError):
        ChartSpec(("x", "x"))
    ch = ChartSpec(("x",), ("y",), ("eps",))
    assert ch.n_vars == 3 and ch.n_geom == 2
