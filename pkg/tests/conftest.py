"""Shared fixtures: charts, a corpus of exact triples, randomized generators."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from leafstab.bigraded import (
    BigradedElement,
    ConnectionData,
    GeometricTriple,
    bigraded,
)
from leafstab.chart import ChartSpec
from leafstab.multivector import Multivector, multivector
from leafstab.poly import Poly, RationalFunction


@pytest.fixture(scope="session")
def chart2():
    """Two base, two fiber variables."""
    return ChartSpec(("x1", "x2"), ("y1", "y2"))


@pytest.fixture(scope="session")
def chart1():
    """Two base, one fiber variable."""
    return ChartSpec(("x1", "x2"), ("y1",))


@pytest.fixture(scope="session")
def chart3():
    """Three base variables, no fiber."""
    return ChartSpec(("x1", "x2", "x3"))


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_poly(rng, chart, max_deg=2, n_terms=3, coeff_range=3) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        exp = [0] * chart.n_vars
        budget = max_deg
        for idx in rng.sample(range(chart.n_vars), min(2, chart.n_vars)):
            e = rng.randint(0, budget)
            exp[idx] = e
            budget -= e
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[tuple(exp)] = Fraction(c)
    return Poly(chart, terms)


def random_rf(rng, chart, max_deg=2) -> RationalFunction:
    return RationalFunction(random_poly(rng, chart, max_deg))


def random_multivector(rng, chart, degree, max_deg=2) -> Multivector:
    keys = list(combinations(range(chart.n_geom), degree))
    terms = {}
    for key in rng.sample(keys, min(len(keys), rng.randint(1, 3))):
        terms[key] = random_rf(rng, chart, max_deg)
    return Multivector(chart, degree, terms)


def random_bigraded(rng, chart, q, p, max_deg=2) -> BigradedElement:
    terms = {}
    for bk in combinations(range(chart.n_base), p):
        for fk in combinations(range(chart.n_fiber), q):
            if rng.random() < 0.7:
                terms[(bk, fk)] = random_rf(rng, chart, max_deg)
    return BigradedElement(chart, q, p, terms)


def random_section(rng, chart, max_deg=2):
    from leafstab.sections import Section

    comps = []
    for _ in range(chart.n_fiber):
        p = random_poly(rng, chart, max_deg)
        # keep base-only: zero out fiber/param exponents
        clean = {}
        for exp, c in p.terms.items():
            e = list(exp)
            for idx in range(chart.n_base, chart.n_vars):
                e[idx] = 0
            key = tuple(e)
            clean[key] = clean.get(key, Fraction(0)) + c
        comps.append(Poly(chart, clean))
    return Section(chart, tuple(comps))


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

def sxi_bivector(chart1) -> Multivector:
    """Product-family bivector with nowhere-vanishing area coefficient."""
    y = Poly.var(chart1, "y1")
    f = Poly.const(chart1, 1) + y + y * y
    return multivector(chart1, 2, {("x1", "x2"): RationalFunction(Poly.const(chart1, 1), f)})


def sxi_triple(chart1) -> GeometricTriple:
    """The same family written directly as a triple with F = f(y1) dx1^dx2."""
    y = Poly.var(chart1, "y1")
    f = RationalFunction(Poly.const(chart1, 1) + y + y * y)
    return GeometricTriple(
        BigradedElement(chart1, 2, 0),
        ConnectionData.zero(chart1),
        bigraded(chart1, 0, 2, {(("x1", "x2"), ()): f}),
    )


def block_bivector(chart2) -> Multivector:
    return multivector(chart2, 2, {("x1", "x2"): 1, ("y1", "y2"): 1})


def curved_triple(chart2) -> GeometricTriple:
    """Curved Poisson triple: constant vertical bivector, connection tilt x2,
    fiber-affine horizontal form.  Reconstructs to a Poisson bivector."""
    x2 = RationalFunction.var(chart2, "x2")
    return GeometricTriple(
        bigraded(chart2, 2, 0, {((), ("y1", "y2")): 1}),
        ConnectionData(chart2, {(0, 1): x2.scale(-1)}),
        bigraded(chart2, 0, 2, {(("x1", "x2"), ()): RationalFunction(
            Poly.const(chart2, 1) + Poly.var(chart2, "y1"))}),
    )


def mismatch_triple(chart1) -> GeometricTriple:
    """Curvature does not match the bracket term: residual (iv) is nonzero."""
    return GeometricTriple(
        BigradedElement(chart1, 2, 0),
        ConnectionData(chart1, {(0, 0): RationalFunction.var(chart1, "x2")}),
        bigraded(chart1, 0, 2, {(("x1", "x2"), ()): 1}),
    )


@pytest.fixture(scope="session")
def poisson_triples(chart1, chart2):
    from leafstab.bigraded import triple_from_bivector

    return [
        ("sxi-direct", sxi_triple(chart1)),
        ("sxi-extracted", triple_from_bivector(sxi_bivector(chart1))),
        ("block", triple_from_bivector(block_bivector(chart2))),
        ("curved", curved_triple(chart2)),
    ]
