"""Bigraded algebra: bracket, connections, curvature, triples, total differential."""

from fractions import Fraction

import pytest

from leafstab.bigraded import (
    BigradedElement,
    ConnectionData,
    GeometricTriple,
    bigraded,
    bivector_from_triple,
    curvature,
    d_gamma,
    omega_bracket,
    total_differential,
    triple_from_bivector,
    verify_structure_equations,
)
from leafstab.chart import ChartSpec
from leafstab.multivector import is_poisson, multivector
from leafstab.poly import Poly, RationalFunction

from conftest import (
    block_bivector,
    curved_triple,
    make_rng,
    mismatch_triple,
    random_bigraded,
    random_rf,
)


def sgn(e):
    return -1 if e % 2 else 1


def total_deg(e):
    return e.q + e.p - 1


# ---------------------------------------------------------------------------
# bracket
# ---------------------------------------------------------------------------

def test_bracket_trivial_on_base_subspace(chart2):
    rng = make_rng(10)
    for _ in range(10):
        u = random_bigraded(rng, chart2, rng.randint(0, 2), rng.randint(0, 2))
        v = random_bigraded(rng, chart2, rng.randint(0, 2), rng.randint(0, 2))
        # strip fiber dependence from the coefficients
        strip = lambda c: RationalFunction(
            Poly(chart2, {tuple(e if i < 2 else 0 for i, e in enumerate(exp)): v2
                          for exp, v2 in c.num.terms.items()}))
        u0, v0 = u.map_coefficients(strip), v.map_coefficients(strip)
        assert omega_bracket(u0, v0).is_zero()


def test_bracket_vertical_example(chart1):
    y1 = RationalFunction.var(chart1, "y1")
    fx = RationalFunction.var(chart1, "x1")
    u = bigraded(chart1, 1, 0, {((), ("y1",)): y1})
    v = bigraded(chart1, 1, 0, {((), ("y1",)): fx})
    # [y1 by1, f(x) by1] = -f(x) by1
    assert omega_bracket(u, v) == bigraded(chart1, 1, 0, {((), ("y1",)): -fx})


def test_bracket_graded_antisymmetry(chart2):
    rng = make_rng(11)
    for _ in range(30):
        q1, p1 = rng.randint(0, 2), rng.randint(0, 2)
        q2, p2 = rng.randint(0, 2), rng.randint(0, 2)
        u = random_bigraded(rng, chart2, q1, p1)
        v = random_bigraded(rng, chart2, q2, p2)
        lhs = omega_bracket(u, v)
        rhs = omega_bracket(v, u).scale(-sgn(total_deg(u) * total_deg(v)))
        assert (lhs - rhs).is_zero()


def test_bracket_graded_jacobi(chart2):
    rng = make_rng(12)
    for _ in range(15):
        bidegs = []
        while len(bidegs) < 3:
            q, p = rng.randint(0, 2), rng.randint(0, 2)
            if q + p <= 3:
                bidegs.append((q, p))
        x, y, z = (random_bigraded(rng, chart2, q, p, max_deg=1) for q, p in bidegs)
        a, b, c = (total_deg(e) for e in (x, y, z))
        total = {}
        for elem, s in (
            (omega_bracket(x, omega_bracket(y, z)).scale(sgn(a * c)), 1),
            (omega_bracket(y, omega_bracket(z, x)).scale(sgn(b * a)), 1),
            (omega_bracket(z, omega_bracket(x, y)).scale(sgn(c * b)), 1),
        ):
            key = elem.bidegree
            total[key] = total.get(key, BigradedElement(chart2, *key)) + elem
        assert all(v.is_zero() for v in total.values())


# ---------------------------------------------------------------------------
# connections and curvature
# ---------------------------------------------------------------------------

def test_d_gamma_flat_is_base_exterior_derivative(chart1):
    x1 = RationalFunction.var(chart1, "x1")
    u = bigraded(chart1, 1, 0, {((), ("y1",)): x1})
    out = d_gamma(ConnectionData.zero(chart1), u)
    assert out == bigraded(chart1, 1, 1, {(("x1",), ("y1",)): 1})


def test_d_gamma_constant_vanishes(chart1):
    u = bigraded(chart1, 1, 0, {((), ("y1",)): 1})
    assert d_gamma(ConnectionData.zero(chart1), u).is_zero()


def test_d_gamma_squared_is_curvature_bracket(chart2):
    rng = make_rng(13)
    for trial in range(12):
        coeffs = {}
        for i in range(2):
            for a in range(2):
                if rng.random() < 0.7:
                    coeffs[(i, a)] = random_rf(rng, chart2, max_deg=2)
        conn = ConnectionData(chart2, coeffs)
        omega = curvature(conn)
        q, p = rng.choice([(1, 0), (2, 0), (1, 1), (0, 1)])
        u = random_bigraded(rng, chart2, q, p, max_deg=1)
        lhs = d_gamma(conn, d_gamma(conn, u))
        rhs = omega_bracket(omega, u)
        assert (lhs - rhs).is_zero()


def test_curvature_examples(chart1):
    assert curvature(ConnectionData.zero(chart1)).is_zero()
    conn = ConnectionData(chart1, {(0, 0): RationalFunction.var(chart1, "x2")})
    assert curvature(conn) == bigraded(chart1, 1, 2, {(("x1", "x2"), ("y1",)): -1})
    # one-dimensional base admits no 2-forms
    line = ChartSpec(("t",), ("y1",))
    conn1 = ConnectionData(line, {(0, 0): RationalFunction.var(line, "y1")})
    assert curvature(conn1).is_zero()


# ---------------------------------------------------------------------------
# triples
# ---------------------------------------------------------------------------

def test_extraction_torus_epsilon():
    ch = ChartSpec(("x1", "x2"), ("y1",), ("eps",))
    eps = RationalFunction.var(ch, "eps")
    theta = multivector(ch, 2, {("x1", "x2"): -1, ("x2", "y1"): eps})
    triple = triple_from_bivector(theta)
    assert triple.vertical.is_zero()
    assert triple.connection.get(0, 0) == eps
    assert triple.connection.get(1, 0).is_zero()
    assert not triple.horizontal.is_zero()
    assert (bivector_from_triple(triple) - theta).is_zero()


def test_extraction_constant_block(chart2):
    theta = multivector(chart2, 2, {("x1", "x2"): 2})
    triple = triple_from_bivector(theta)
    assert triple.vertical.is_zero()
    assert triple.connection.is_zero()
    assert (bivector_from_triple(triple) - theta).is_zero()


def test_extraction_block_diagonal(chart2):
    theta = block_bivector(chart2)
    triple = triple_from_bivector(theta)
    assert triple.vertical == bigraded(chart2, 2, 0, {((), ("y1", "y2")): 1})
    assert triple.connection.is_zero()
    assert (bivector_from_triple(triple) - theta).is_zero()


def test_extraction_rejects_degenerate(chart2):
    theta = multivector(chart2, 2, {("y1", "y2"): 1})
    with pytest.raises(ValueError):
        triple_from_bivector(theta)


def test_extraction_sample_point_guard(chart1):
    x1 = RationalFunction.var(chart1, "x1")
    theta = multivector(chart1, 2, {("x1", "x2"): x1})
    triple_from_bivector(theta, sample_points=[{"x1": Fraction(1)}])
    with pytest.raises(ValueError):
        triple_from_bivector(theta, sample_points=[{"x1": Fraction(0)}])


def test_round_trip_randomized(chart2):
    rng = make_rng(14)
    done = 0
    while done < 5:
        terms = {("x1", "x2"): RationalFunction.const(chart2, rng.choice([1, -1, 2]))}
        for key in (("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2"), ("y1", "y2")):
            if rng.random() < 0.6:
                terms[key] = random_rf(rng, chart2, max_deg=1)
        theta = multivector(chart2, 2, terms)
        triple = triple_from_bivector(theta)
        assert (bivector_from_triple(triple) - theta).is_zero()
        done += 1


def test_structure_equations_poisson_corpus(poisson_triples):
    for name, triple in poisson_triples:
        res = verify_structure_equations(triple)
        assert res.all_zero, f"nonzero residual for {name}"
        assert is_poisson(bivector_from_triple(triple)), name


def test_structure_equations_detect_curvature_mismatch(chart1):
    res = verify_structure_equations(mismatch_triple(chart1))
    # with a vanishing vertical part the residual is the curvature itself
    assert res.curvature_equation == bigraded(chart1, 1, 2, {(("x1", "x2"), ("y1",)): -1})
    assert res.vertical_square.is_zero()
    # equivalence: the reconstructed bivector is not Poisson
    assert not is_poisson(bivector_from_triple(mismatch_triple(chart1)))


def test_structure_equations_detect_bad_vertical(chart2):
    bad = GeometricTriple(
        bigraded(chart2, 2, 0, {((), ("y1", "y2")): RationalFunction.var(chart2, "x1")}),
        ConnectionData.zero(chart2),
        bigraded(chart2, 0, 2, {(("x1", "x2"), ()): 1}),
    )
    assert not verify_structure_equations(bad).all_zero
    assert not is_poisson(bivector_from_triple(bad))


def test_total_differential_squares_to_zero(poisson_triples):
    rng = make_rng(15)
    for name, triple in poisson_triples:
        ch = triple.chart
        for _ in range(3):
            q = rng.randint(0, min(2, ch.n_fiber))
            p = rng.randint(0, 2)
            u = random_bigraded(rng, ch, q, p, max_deg=1)
            first = total_differential(triple, u)
            acc = {}
            for comp in first.components:
                if comp.is_zero():
                    continue
                second = total_differential(triple, comp)
                for c2 in second.components:
                    if c2.is_zero():
                        continue
                    key = c2.bidegree
                    acc[key] = acc.get(key, BigradedElement(ch, *key)) + c2
            assert all(v.is_zero() for v in acc.values()), name


def test_total_differential_component_collapse(chart1):
    # no vertical part and flat connection: only dx and the form bracket act
    from conftest import sxi_triple

    triple = sxi_triple(chart1)
    rng = make_rng(16)
    u = random_bigraded(rng, chart1, 1, 0)
    diff = total_differential(triple, u)
    assert diff.raise_vertical.is_zero()
    flat = d_gamma(ConnectionData.zero(chart1), u)
    assert (diff.raise_form - flat).is_zero()


def test_total_differential_preserves_base_subspace_for_linear_triple(chart2):
    triple = curved_triple(chart2)
    rng = make_rng(17)
    for _ in range(5):
        u = random_bigraded(rng, chart2, 1, 1, max_deg=0)
        strip = lambda c: RationalFunction(
            Poly(chart2, {tuple(e if i < 2 else 0 for i, e in enumerate(exp)): v
                          for exp, v in c.num.terms.items()}))
        u0 = u.map_coefficients(strip)
        for comp in total_differential(triple, u0).components:
            assert comp.in_base_subspace()
