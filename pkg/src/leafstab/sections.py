"""Restriction and linearization along sections of the fiber bundle.

A section assigns to each fiber variable a polynomial in the base variables;
its graph is a candidate leaf.  This module provides:

* restriction ``u|_s`` (substitute y -> s(x)) and the connection restriction,
  with the sign convention ``(ds^a/dx^i - Gamma_i^a(x, s(x)))`` chosen so the
  leaf-finder gradient carries no extra sign (the zero set, i.e. the leaf
  criterion, is unaffected);
* the leaf obstruction, whose vanishing characterizes the graph as a leaf;
* the rescaled pullback ``phi_t_s`` and the y-Taylor coefficients it
  generates (restriction = order 0, linearization = order 1);
* the linearized differential along a section and the exact check that the
  first-order expansion of the structure equations annihilates the
  restricted triple;
* first-jet triples, polynomial flat-kernel sections, and first-order
  cocycle deformations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bigraded import (
    BigradedElement,
    ConnectionData,
    GeometricTriple,
    TotalDifferential,
    d_gamma,
    omega_bracket,
)
from .chart import ChartSpec, check_same_chart
from .linalg import nullspace
from .poly import Poly, RationalFunction


# ---------------------------------------------------------------------------
# sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Section:
    """Polynomial section: one base-only polynomial per fiber variable."""

    chart: ChartSpec
    components: tuple[Poly, ...]

    def __post_init__(self):
        chart = self.chart
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != chart.n_fiber:
            raise ValueError(f"section needs {chart.n_fiber} components, got {len(comps)}")
        for c in comps:
            if c.chart != chart:
                raise ValueError("section component on a different chart")
            for exp in c.terms:
                for idx, e in enumerate(exp):
                    if e and chart.is_fiber(idx):
                        raise ValueError("section components must not mention fiber variables")

    @classmethod
    def zero(cls, chart: ChartSpec) -> "Section":
        return cls(chart, tuple(Poly.zero(chart) for _ in range(chart.n_fiber)))

    @classmethod
    def constant(cls, chart: ChartSpec, *values) -> "Section":
        return cls(chart, tuple(Poly.const(chart, v) for v in values))

    def assignment(self) -> dict[int, Poly]:
        nb = self.chart.n_base
        return {a: self.components[a] for a in range(self.chart.n_fiber)}

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def as_bigraded(self) -> BigradedElement:
        """The section as a (1,0) element."""
        terms = {
            ((), (a,)): RationalFunction(c)
            for a, c in enumerate(self.components)
            if not c.is_zero()
        }
        return BigradedElement(self.chart, 1, 0, terms)


def _subst_fiber(coeff: RationalFunction, s: Section) -> RationalFunction:
    return coeff.substitute_fiber(s.assignment())


# ---------------------------------------------------------------------------
# restriction
# ---------------------------------------------------------------------------

def restrict(u: BigradedElement, s: Section) -> BigradedElement:
    """Substitute y -> s(x) in every coefficient; lands in the base subspace."""
    check_same_chart(u, s.as_bigraded())
    return u.map_coefficients(lambda c: _subst_fiber(c, s))


def restrict_connection(conn: ConnectionData, s: Section) -> BigradedElement:
    """(ds^a/dx^i - Gamma_i^a(x, s(x))) dx^i (x) by_a; zero iff the graph is horizontal."""
    chart = conn.chart
    terms = {}
    for i in range(chart.n_base):
        for a in range(chart.n_fiber):
            val = RationalFunction(s.components[a].partial(i)) - _subst_fiber(conn.get(i, a), s)
            if not val.is_zero():
                terms[((i,), (a,))] = val
    return BigradedElement(chart, 1, 1, terms)


@dataclass(frozen=True)
class ObstructionPair:
    """(vertical restriction, connection restriction); zero iff Graph(s) is a leaf."""

    vertical_part: BigradedElement
    connection_part: BigradedElement

    def __post_init__(self):
        if self.vertical_part.bidegree != (2, 0) and not self.vertical_part.is_zero():
            raise ValueError("vertical part must have bidegree (2,0)")
        if self.connection_part.bidegree != (1, 1) and not self.connection_part.is_zero():
            raise ValueError("connection part must have bidegree (1,1)")
        if not (self.vertical_part.in_base_subspace() and self.connection_part.in_base_subspace()):
            raise ValueError("obstruction parts must be independent of the fiber variables")

    @property
    def is_zero(self) -> bool:
        return self.vertical_part.is_zero() and self.connection_part.is_zero()


def leaf_obstruction(triple: GeometricTriple, s: Section) -> ObstructionPair:
    return ObstructionPair(
        restrict(triple.vertical, s),
        restrict_connection(triple.connection, s),
    )


# ---------------------------------------------------------------------------
# rescaling and linearization
# ---------------------------------------------------------------------------

def rescale(u: BigradedElement, t, s: Section) -> BigradedElement:
    """phi_t_s: replace y -> t*y + s(x), then scale by 1/t (t a nonzero rational)."""
    t = Fraction(t)
    if t == 0:
        raise ValueError("rescaling requires t != 0")
    chart = u.chart
    nb = chart.n_base
    assignment = {
        nb + a: Poly.var(chart, chart.fiber_vars[a]).scale(t) + s.components[a]
        for a in range(chart.n_fiber)
    }
    inv_t = Fraction(1) / t
    return u.map_coefficients(lambda c: c.substitute(assignment).scale(inv_t))


def linearize(u: BigradedElement, s: Section) -> BigradedElement:
    """Fiberwise-linear part along s: sum_b (du/dy^b)(x, s(x)) y^b."""
    chart = u.chart
    nb = chart.n_base

    def lin(c: RationalFunction) -> RationalFunction:
        acc = RationalFunction.zero(chart)
        for b in range(chart.n_fiber):
            dc = c.partial(nb + b)
            if dc.is_zero():
                continue
            yb = RationalFunction.var(chart, chart.fiber_vars[b])
            acc = acc + _subst_fiber(dc, s) * yb
        return acc

    return u.map_coefficients(lin)


def linearize_connection(conn: ConnectionData, s: Section) -> ConnectionData:
    chart = conn.chart
    nb = chart.n_base
    out = {}
    for (i, a), c in conn.coeffs.items():
        acc = RationalFunction.zero(chart)
        for b in range(chart.n_fiber):
            dc = c.partial(nb + b)
            if dc.is_zero():
                continue
            yb = RationalFunction.var(chart, chart.fiber_vars[b])
            acc = acc + _subst_fiber(dc, s) * yb
        if not acc.is_zero():
            out[(i, a)] = acc
    return ConnectionData(chart, out)


def taylor_coefficient(u: BigradedElement, s: Section, order: int) -> BigradedElement:
    """Order-k coefficient of the y-Taylor expansion of the coefficients at s.

    Order 0 is the restriction, order 1 the linearization; polynomial
    coefficients make the expansion finite and exact.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    chart = u.chart
    nb = chart.n_base
    multi_indices = _exponents(chart.n_fiber, order)

    def coeff(c: RationalFunction) -> RationalFunction:
        acc = RationalFunction.zero(chart)
        for beta in multi_indices:
            d = c
            fact = 1
            for b, e in enumerate(beta):
                for k in range(e):
                    d = d.partial(nb + b)
                fact *= _factorial(e)
            if d.is_zero():
                continue
            mono = Poly.const(chart, Fraction(1, fact))
            for b, e in enumerate(beta):
                if e:
                    mono = mono * (Poly.var(chart, chart.fiber_vars[b]) ** e)
            acc = acc + _subst_fiber(d, s) * RationalFunction(mono)
        return acc

    return u.map_coefficients(coeff)


def _exponents(n: int, total: int):
    if n == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total + 1):
        for rest in _exponents(n - 1, total - first):
            out.append((first,) + rest)
    return out


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


# ---------------------------------------------------------------------------
# linearized differential and structure equations
# ---------------------------------------------------------------------------

def linearized_triple(triple: GeometricTriple, s: Section) -> GeometricTriple:
    """Triple of the fiberwise-linear parts of the data along s."""
    return GeometricTriple(
        linearize(triple.vertical, s),
        linearize_connection(triple.connection, s),
        linearize(triple.horizontal, s),
    )


def linearized_differential(
    triple: GeometricTriple, s: Section, w: BigradedElement, reduced: bool = False
) -> TotalDifferential:
    """d along s applied to a base-subspace element; output stays in the base subspace.

    With ``reduced=True`` every output component of vertical degree zero is
    dropped (the quotient by the scalar forms).
    """
    if not w.in_base_subspace():
        raise ValueError("linearized differential expects a base-subspace element")
    lin = linearized_triple(triple, s)
    d_v = omega_bracket(lin.vertical, w)
    d_h = d_gamma(lin.connection, w)
    d_f = omega_bracket(lin.horizontal, w)
    if reduced:
        if d_v.q == 0:
            d_v = BigradedElement(w.chart, 0, d_v.p)
        if d_h.q == 0:
            d_h = BigradedElement(w.chart, 0, d_h.p)
        if d_f.q == 0:
            d_f = BigradedElement(w.chart, 0, d_f.p)
    return TotalDifferential(d_v, d_h, d_f)


def linearized_structure_residuals(triple: GeometricTriple, s: Section) -> list[BigradedElement]:
    """Components of d_{theta,s} applied to the restricted triple.

    The restricted triple is assembled with the connection restriction
    ``Gamma(x, s(x)) - ds`` (the opposite of :func:`restrict_connection`),
    which is the combination the first-order expansion of the structure
    equations annihilates.  All components vanish exactly when the triple
    satisfies the structure equations.
    """
    theta_v_s = restrict(triple.vertical, s)
    gamma_s = -restrict_connection(triple.connection, s)
    f_s = restrict(triple.horizontal, s)
    acc: dict[tuple[int, int], BigradedElement] = {}
    for part in (theta_v_s, gamma_s, f_s):
        if part.is_zero():
            continue
        diff = linearized_differential(triple, s, part)
        for comp in diff.components:
            if comp.is_zero():
                continue
            key = comp.bidegree
            acc[key] = acc[key] + comp if key in acc else comp
    return [v for v in acc.values() if not v.is_zero()]


# ---------------------------------------------------------------------------
# first jets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JetTriple:
    """First-order data along the zero leaf: linear vertical part, linear
    connection, and an affine horizontal 2-form (leaf symplectic form plus a
    fiberwise-linear variation)."""

    vertical_lin: BigradedElement
    connection_lin: ConnectionData
    horizontal_affine: BigradedElement

    def __post_init__(self):
        chart = self.vertical_lin.chart
        zero = Section.zero(chart)
        if not restrict(self.vertical_lin, zero).is_zero():
            raise ValueError("vertical part of a jet must vanish on the zero section")
        if not self.vertical_lin.is_zero() and self.vertical_lin.fiber_degree() > 1:
            raise ValueError("vertical part of a jet must be linear in the fiber")
        if not self.connection_lin.is_linear_in_y():
            raise ValueError("connection of a jet must be linear in the fiber")
        if not self.horizontal_affine.is_zero() and self.horizontal_affine.fiber_degree() > 1:
            raise ValueError("horizontal part of a jet must be affine in the fiber")

    @property
    def chart(self) -> ChartSpec:
        return self.vertical_lin.chart

    @property
    def leaf_form(self) -> BigradedElement:
        """The horizontal part restricted to the zero section."""
        return restrict(self.horizontal_affine, Section.zero(self.chart))

    @property
    def form_variation(self) -> BigradedElement:
        """The fiberwise-linear part of the horizontal form."""
        return linearize(self.horizontal_affine, Section.zero(self.chart))

    def to_triple(self) -> GeometricTriple:
        return GeometricTriple(self.vertical_lin, self.connection_lin, self.horizontal_affine)


def first_jet(triple: GeometricTriple, sample_points=None) -> JetTriple:
    """First-order approximation along the zero section (which must be a leaf)."""
    chart = triple.chart
    zero = Section.zero(chart)
    if not leaf_obstruction(triple, zero).is_zero:
        raise ValueError("zero section is not a leaf: obstruction does not vanish")
    jet = JetTriple(
        linearize(triple.vertical, zero),
        linearize_connection(triple.connection, zero),
        restrict(triple.horizontal, zero) + linearize(triple.horizontal, zero),
    )
    jet.to_triple().check_nondegenerate(sample_points)
    return jet


# ---------------------------------------------------------------------------
# flat kernel sections
# ---------------------------------------------------------------------------

def _base_monomials(chart: ChartSpec, max_degree: int) -> list[tuple[int, ...]]:
    nb = chart.n_base
    out = []

    def rec(prefix, remaining, pos):
        if pos == nb:
            out.append(tuple(prefix) + (0,) * (chart.n_vars - nb))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, pos + 1)

    rec([], max_degree, 0)
    return sorted(out)


def flat_kernel_sections(jet: JetTriple, degree_bound: int) -> list[Section]:
    """Basis of polynomial sections (degree <= bound) killed by the jet data.

    Solves, as one exact rational linear system over the coefficient space,
    for sections annihilated by both the linear vertical bracket and the
    linear covariant derivative.
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    chart = jet.chart
    monomials = _base_monomials(chart, degree_bound)
    unknowns = [(a, mono) for a in range(chart.n_fiber) for mono in monomials]
    if not unknowns:
        return []

    columns = []
    row_keys: dict = {}
    images = []
    for a, mono in unknowns:
        w = BigradedElement(chart, 1, 0, {((), (a,)): RationalFunction(Poly(chart, {mono: Fraction(1)}))})
        nabla = d_gamma(jet.connection_lin, w)
        bracket = omega_bracket(jet.vertical_lin, w)
        image: dict = {}
        for tag, elem in (("conn", nabla), ("vert", bracket)):
            for key, coeff in elem.terms.items():
                poly = coeff.as_poly()
                for exp, val in poly.terms.items():
                    rk = (tag, key, exp)
                    image[rk] = image.get(rk, Fraction(0)) + val
                    row_keys.setdefault(rk, len(row_keys))
        images.append(image)

    n_rows = max(len(row_keys), 1)
    matrix = [[Fraction(0)] * len(unknowns) for _ in range(n_rows)]
    for col, image in enumerate(images):
        for rk, val in image.items():
            matrix[row_keys[rk]][col] = val

    basis = []
    for vec in nullspace(matrix):
        comps = []
        for a in range(chart.n_fiber):
            terms = {}
            for j, (ua, mono) in enumerate(unknowns):
                if ua == a and vec[j] != 0:
                    terms[mono] = vec[j]
            comps.append(Poly(chart, terms))
        basis.append(Section(chart, tuple(comps)))
    return basis


# ---------------------------------------------------------------------------
# cocycle deformations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeformationCocycle:
    """Total-degree-2 base-subspace element: components (2,0), (1,1), (0,2)."""

    vertical: BigradedElement
    connection: BigradedElement
    horizontal: BigradedElement

    def __post_init__(self):
        for part, bideg in (
            (self.vertical, (2, 0)),
            (self.connection, (1, 1)),
            (self.horizontal, (0, 2)),
        ):
            if part.bidegree != bideg and not part.is_zero():
                raise ValueError(f"cocycle component must have bidegree {bideg}")
            if not part.in_base_subspace():
                raise ValueError("cocycle components must be independent of the fiber variables")

    @classmethod
    def zero(cls, chart: ChartSpec) -> "DeformationCocycle":
        return cls(
            BigradedElement(chart, 2, 0),
            BigradedElement(chart, 1, 1),
            BigradedElement(chart, 0, 2),
        )


def is_first_order_type(triple: GeometricTriple) -> bool:
    """Linear vertical part, linear connection, affine horizontal 2-form."""
    chart = triple.chart
    zero = Section.zero(chart)
    tv = triple.vertical
    if not tv.is_zero():
        if not tv.in_base_subspace() and tv.fiber_degree() > 1:
            return False
        if not restrict(tv, zero).is_zero():
            return False
        if tv.in_base_subspace():
            return False
    if not triple.connection.is_linear_in_y():
        return False
    hz = triple.horizontal
    if not hz.is_zero() and hz.fiber_degree() > 1:
        return False
    return True


def deform_by_cocycle(triple: GeometricTriple, cocycle: DeformationCocycle, t) -> GeometricTriple:
    """Shift a first-order triple by t times a base-subspace 2-cochain.

    The deformed triple satisfies the structure equations iff the cochain is
    a cocycle of the linearized differential at the zero section.
    """
    if not is_first_order_type(triple):
        raise ValueError("deformation requires a first-order-type triple")
    t = Fraction(t)
    chart = triple.chart
    conn_shift = {}
    for (I, J), c in cocycle.connection.terms.items():
        conn_shift[(I[0], J[0])] = c.scale(t)
    new_conn = triple.connection + ConnectionData(chart, conn_shift)
    return GeometricTriple(
        triple.vertical + cocycle.vertical.scale(t),
        new_conn,
        triple.horizontal + cocycle.horizontal.scale(t),
    )


def cocycle_differential(triple: GeometricTriple, cocycle: DeformationCocycle) -> list[BigradedElement]:
    """d at the zero section applied to the cochain, grouped by bidegree."""
    zero = Section.zero(triple.chart)
    acc: dict[tuple[int, int], BigradedElement] = {}
    for part in (cocycle.vertical, cocycle.connection, cocycle.horizontal):
        if part.is_zero():
            continue
        diff = linearized_differential(triple, zero, part)
        for comp in diff.components:
            if comp.is_zero():
                continue
            key = comp.bidegree
            acc[key] = acc[key] + comp if key in acc else comp
    return [v for v in acc.values() if not v.is_zero()]
