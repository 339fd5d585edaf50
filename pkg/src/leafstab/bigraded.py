"""Bigraded algebra of base-form-valued vertical multivectors.

An element of bidegree ``(q, p)`` is stored as a map

    (I, J)  ->  coefficient,

where ``I`` is a strictly increasing tuple of base indices (the ``dx`` part,
length p), ``J`` a strictly increasing tuple of fiber positions (the vertical
``by`` part, length q), and the coefficient is a rational function in all
chart variables.  Elements with y-independent coefficients form the
"restricted to the base" subspace; elements with coefficients linear in y
form the fiberwise-linear subspace.

The bracket combines the wedge of base forms with the vertical Schouten
bracket and carries the Koszul sign ``(-1)^((q-1) p')`` needed to make it a
graded Lie bracket for the shifted total degree ``q + p - 1`` (verified by
the test suite together with the curvature identity and the vanishing square
of the total differential).

Geometric triples (vertical bivector, connection, horizontal 2-form) encode
horizontally non-degenerate bivectors; extraction and reconstruction are
exact over the rational-function field.  The two residual sign conventions
the construction leaves open (the orientation of the horizontal 2-form and
the sign in the curvature structure equation) are pinned by requiring that
the reconstructed bivector is Poisson exactly when all four structure
residuals vanish; see ``F_SIGN`` / ``CURVATURE_EQ_SIGN`` below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .chart import ChartSpec, check_same_chart
from .linalg import rf_matrix_inverse
from .multivector import Multivector, _schouten_monomial, merge_indices
from .poly import RationalFunction

Key = tuple[tuple[int, ...], tuple[int, ...]]

# Orientation of the horizontal 2-form relative to the inverse of the
# horizontal block, and the sign of the bracket term in the curvature
# structure equation.  Pinned (see module docstring) by the equivalence
#   reconstructed bivector Poisson  <=>  all four residuals vanish,
# checked over the corpus in tests/test_bigraded.py.  With the bracket
# conventions of this package the curvature equation reads
# Omega_Gamma + [F, theta_v] = 0.  The flipped pair (-1, -1) is the only
# other consistent choice (a global reorientation of F).
F_SIGN = 1
CURVATURE_EQ_SIGN = 1
# Sign of the horizontal-form summand in the total differential, pinned by
# d_theta^2 = 0 on Poisson triples (only +1 is consistent).
TOTAL_F_SIGN = 1


class BigradedElement:
    """Form-valued vertical multivector of fixed bidegree (q, p)."""

    __slots__ = ("chart", "q", "p", "terms")

    def __init__(self, chart: ChartSpec, q: int, p: int, terms: Mapping[Key, RationalFunction] | None = None):
        if q < 0 or p < 0:
            raise ValueError("bidegree components must be nonnegative")
        self.chart = chart
        self.q = q
        self.p = p
        clean: dict[Key, RationalFunction] = {}
        if terms:
            for (base_idx, fiber_idx), coeff in terms.items():
                base_idx, fiber_idx = tuple(base_idx), tuple(fiber_idx)
                if len(base_idx) != p or len(fiber_idx) != q:
                    raise ValueError(f"key {(base_idx, fiber_idx)} does not match bidegree {(q, p)}")
                if any(not (0 <= i < chart.n_base) for i in base_idx):
                    raise ValueError(f"base index out of range in {base_idx}")
                if any(not (0 <= a < chart.n_fiber) for a in fiber_idx):
                    raise ValueError(f"fiber index out of range in {fiber_idx}")
                if any(a >= b for a, b in zip(base_idx, base_idx[1:])) or any(
                    a >= b for a, b in zip(fiber_idx, fiber_idx[1:])
                ):
                    raise ValueError(f"multi-indices must be strictly increasing: {(base_idx, fiber_idx)}")
                if coeff.is_zero():
                    continue
                clean[(base_idx, fiber_idx)] = coeff
        self.terms = {k: clean[k] for k in sorted(clean)}

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.q, self.p)

    def is_zero(self) -> bool:
        return not self.terms

    def in_base_subspace(self) -> bool:
        """True when no coefficient depends on a fiber variable."""
        ch = self.chart
        fiber_ids = range(ch.n_base, ch.n_base + ch.n_fiber)
        for c in self.terms.values():
            if any(c.num.depends_on(i) or c.den.depends_on(i) for i in fiber_ids):
                return False
        return True

    def fiber_degree(self) -> int:
        """Max polynomial degree of the coefficients in the fiber variables."""
        ch = self.chart
        fiber_ids = tuple(range(ch.n_base, ch.n_base + ch.n_fiber))
        deg = -1
        for c in self.terms.values():
            if not c.is_polynomial():
                raise ValueError("fiber degree undefined for non-polynomial coefficients")
            deg = max(deg, c.num.degree_in(fiber_ids))
        return deg

    def _binary(self, other, op):
        check_same_chart(self, other)
        if (self.q, self.p) != (other.q, other.p) and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"bidegree mismatch: {(self.q, self.p)} vs {(other.q, other.p)}")
        out = dict(self.terms)
        for key, c in other.terms.items():
            prev = out.get(key)
            val = op(prev, c)
            if val.is_zero():
                out.pop(key, None)
            else:
                out[key] = val
        q, p = (self.q, self.p) if self.terms or not other.terms else (other.q, other.p)
        return BigradedElement(self.chart, q, p, out)

    def __add__(self, other):
        return self._binary(other, lambda s, c: s + c if s is not None else c)

    def __sub__(self, other):
        return self._binary(other, lambda s, c: s - c if s is not None else -c)

    def __neg__(self):
        return BigradedElement(self.chart, self.q, self.p, {k: -c for k, c in self.terms.items()})

    def scale(self, factor) -> "BigradedElement":
        if not isinstance(factor, RationalFunction):
            factor = RationalFunction.const(self.chart, factor)
        return BigradedElement(self.chart, self.q, self.p, {k: c * factor for k, c in self.terms.items()})

    def map_coefficients(self, fn) -> "BigradedElement":
        return BigradedElement(self.chart, self.q, self.p, {k: fn(c) for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, BigradedElement) or self.chart != other.chart:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        raise TypeError("BigradedElement is not hashable")

    def __repr__(self):
        if not self.terms:
            return f"BigradedElement<{self.q},{self.p}>[0]"
        ch = self.chart
        parts = []
        for (I, J), c in self.terms.items():
            dx = "^".join(f"dx{ch.base_vars[i]}" for i in I) if I else "1"
            dy = "^".join(f"b{ch.fiber_vars[a]}" for a in J) if J else "1"
            parts.append(f"({c}) {dx}|{dy}")
        return f"BigradedElement<{self.q},{self.p}>[" + " + ".join(parts) + "]"


def bigraded(chart: ChartSpec, q: int, p: int, terms=None) -> BigradedElement:
    """Constructor taking variable names in keys: {((base names), (fiber names)): coeff}."""
    out = {}
    if terms:
        for (base_key, fiber_key), coeff in terms.items():
            base_idx = tuple(chart.index(n) if isinstance(n, str) else n for n in base_key)
            fiber_idx = tuple(
                chart.fiber_index(chart.index(n)) if isinstance(n, str) else n for n in fiber_key
            )
            if not isinstance(coeff, RationalFunction):
                coeff = RationalFunction.const(chart, coeff)
            out[(base_idx, fiber_idx)] = coeff
    return BigradedElement(chart, q, p, out)


# ---------------------------------------------------------------------------
# bracket
# ---------------------------------------------------------------------------

def omega_bracket(u: BigradedElement, v: BigradedElement) -> BigradedElement:
    """Graded bracket of bidegree (q+q'-1, p+p'); trivial on base-only pairs."""
    check_same_chart(u, v)
    chart = u.chart
    nb = chart.n_base
    q_out = u.q + v.q - 1
    p_out = u.p + v.p
    if q_out < 0:
        return BigradedElement(chart, 0, p_out)
    out: dict[Key, RationalFunction] = {}
    koszul = ((u.q - 1) * v.p) % 2 == 1
    for (i1, j1), c1 in u.terms.items():
        for (i2, j2), c2 in v.terms.items():
            merged = merge_indices(i1, i2)
            if merged is None:
                continue
            base_sign, base_key = merged
            vert = _schouten_monomial(
                c1, tuple(nb + a for a in j1), c2, tuple(nb + a for a in j2), chart
            )
            for vkey, coeff in vert.items():
                fiber_key = tuple(k - nb for k in vkey)
                val = coeff
                if base_sign < 0:
                    val = -val
                if koszul:
                    val = -val
                prev = out.get((base_key, fiber_key))
                total = prev + val if prev is not None else val
                if total.is_zero():
                    out.pop((base_key, fiber_key), None)
                else:
                    out[(base_key, fiber_key)] = total
    return BigradedElement(chart, q_out, p_out, out)


# ---------------------------------------------------------------------------
# connections
# ---------------------------------------------------------------------------

class ConnectionData:
    """Connection on the trivialized bundle: coefficients per (base i, fiber a)."""

    __slots__ = ("chart", "coeffs")

    def __init__(self, chart: ChartSpec, coeffs: Mapping[tuple[int, int], RationalFunction] | None = None):
        self.chart = chart
        clean: dict[tuple[int, int], RationalFunction] = {}
        if coeffs:
            for (i, a), c in coeffs.items():
                if not (0 <= i < chart.n_base and 0 <= a < chart.n_fiber):
                    raise ValueError(f"connection index {(i, a)} out of range")
                if not c.is_zero():
                    clean[(i, a)] = c
        self.coeffs = {k: clean[k] for k in sorted(clean)}

    @classmethod
    def zero(cls, chart: ChartSpec) -> "ConnectionData":
        return cls(chart, {})

    def get(self, i: int, a: int) -> RationalFunction:
        c = self.coeffs.get((i, a))
        return c if c is not None else RationalFunction.zero(self.chart)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_linear_in_y(self) -> bool:
        ch = self.chart
        fiber_ids = tuple(range(ch.n_base, ch.n_base + ch.n_fiber))
        for c in self.coeffs.values():
            if not c.is_polynomial():
                return False
            p = c.num
            for exp in p.terms:
                if sum(exp[i] for i in fiber_ids) != 1:
                    return False
        return True

    def as_bigraded(self) -> BigradedElement:
        """The (1,1) element with the same coefficients."""
        return BigradedElement(
            self.chart, 1, 1, {((i,), (a,)): c for (i, a), c in self.coeffs.items()}
        )

    def map_coefficients(self, fn) -> "ConnectionData":
        return ConnectionData(self.chart, {k: fn(c) for k, c in self.coeffs.items()})

    def __add__(self, other: "ConnectionData") -> "ConnectionData":
        check_same_chart(self, other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            prev = out.get(k)
            val = prev + c if prev is not None else c
            if val.is_zero():
                out.pop(k, None)
            else:
                out[k] = val
        return ConnectionData(self.chart, out)

    def __eq__(self, other):
        if not isinstance(other, ConnectionData) or self.chart != other.chart:
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.get(*k) == other.get(*k) for k in keys)

    def __hash__(self):
        raise TypeError("ConnectionData is not hashable")

    def __repr__(self):
        ch = self.chart
        body = ", ".join(
            f"G[{ch.base_vars[i]},{ch.fiber_vars[a]}]={c}" for (i, a), c in self.coeffs.items()
        )
        return f"ConnectionData({body or '0'})"


def _hor_derivative(conn: ConnectionData, i: int, f: RationalFunction) -> RationalFunction:
    """Derivative of f along the horizontal lift of the i-th base direction."""
    chart = conn.chart
    out = f.partial(i)
    for b in range(chart.n_fiber):
        g = conn.get(i, b)
        if g.is_zero():
            continue
        df = f.partial(chart.n_base + b)
        if not df.is_zero():
            out = out + g * df
    return out


def d_gamma(conn: ConnectionData, u: BigradedElement) -> BigradedElement:
    """Covariant exterior differential: bidegree (q, p) -> (q, p+1).

    Koszul formula in coordinates: a d-x factor is wedged on the left, the
    coefficient is differentiated along the horizontal lift, and the vertical
    frame rotates by [hor_i, by_a] = -(d Gamma_i^b / d y^a) by_b.
    """
    check_same_chart(conn, u)
    chart = u.chart
    nb = chart.n_base
    out: dict[Key, RationalFunction] = {}

    def add(base_key, fiber_key, val):
        if val.is_zero():
            return
        prev = out.get((base_key, fiber_key))
        total = prev + val if prev is not None else val
        if total.is_zero():
            out.pop((base_key, fiber_key), None)
        else:
            out[(base_key, fiber_key)] = total

    for (I, J), f in u.terms.items():
        for i in range(nb):
            merged = merge_indices((i,), I)
            if merged is None:
                continue
            sign, base_key = merged
            # transport of the coefficient
            df = _hor_derivative(conn, i, f)
            if not df.is_zero():
                add(base_key, J, df if sign > 0 else -df)
            # rotation of the vertical frame
            for pos, a in enumerate(J):
                for b in range(chart.n_fiber):
                    g = conn.get(i, b)
                    if g.is_zero():
                        continue
                    dg = g.partial(nb + a)
                    if dg.is_zero():
                        continue
                    rest = J[:pos] + J[pos + 1 :]
                    m2 = merge_indices((b,), rest)
                    if m2 is None:
                        continue
                    fsign, fiber_key = m2
                    # move by_b into slot pos: sign (-1)^pos, then sort
                    total_sign = sign * fsign * (-1 if pos % 2 else 1)
                    val = -(f * dg)
                    add(base_key, fiber_key, val if total_sign > 0 else -val)
    return BigradedElement(chart, u.q, u.p + 1, out)


def curvature(conn: ConnectionData) -> BigradedElement:
    """Curvature as a (1,2) element: [hor_i, hor_j] - hor([i, j]) componentwise."""
    chart = conn.chart
    out: dict[Key, RationalFunction] = {}
    for i in range(chart.n_base):
        for j in range(i + 1, chart.n_base):
            for a in range(chart.n_fiber):
                val = _hor_derivative(conn, i, conn.get(j, a)) - _hor_derivative(conn, j, conn.get(i, a))
                if not val.is_zero():
                    out[((i, j), (a,))] = val
    return BigradedElement(chart, 1, 2, out)


# ---------------------------------------------------------------------------
# geometric triples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeometricTriple:
    """(vertical bivector, connection, horizontal 2-form) on a trivialized chart."""

    vertical: BigradedElement
    connection: ConnectionData
    horizontal: BigradedElement

    def __post_init__(self):
        if self.vertical.bidegree != (2, 0) and not self.vertical.is_zero():
            raise ValueError(f"vertical part must have bidegree (2,0), got {self.vertical.bidegree}")
        if self.horizontal.bidegree != (0, 2) and not self.horizontal.is_zero():
            raise ValueError(f"horizontal part must have bidegree (0,2), got {self.horizontal.bidegree}")
        check_same_chart(self.vertical, self.connection)
        check_same_chart(self.vertical, self.horizontal)

    @property
    def chart(self) -> ChartSpec:
        return self.vertical.chart

    def check_nondegenerate(self, sample_points=None) -> None:
        """Exact non-vanishing of det F plus optional sample-point checks."""
        chart = self.chart
        fm = _form_matrix(self.horizontal)
        from .linalg import rf_matrix_det

        det = rf_matrix_det(fm, chart)
        if det.is_zero():
            raise ValueError("horizontal 2-form is degenerate")
        for point in sample_points or ({},):
            value = det.evaluate({chart.index(k) if isinstance(k, str) else k: v for k, v in point.items()})
            if value == 0:
                raise ValueError(f"horizontal 2-form degenerates at sample point {point}")


def _form_matrix(f02: BigradedElement):
    """Antisymmetric base matrix of a (0,2) element."""
    chart = f02.chart
    n = chart.n_base
    zero = RationalFunction.zero(chart)
    m = [[zero for _ in range(n)] for _ in range(n)]
    for (I, _), c in f02.terms.items():
        i, j = I
        m[i][j] = c
        m[j][i] = -c
    return m


def _bivector_blocks(theta: Multivector):
    """Split a bivector into base-base, base-fiber, fiber-fiber component maps."""
    chart = theta.chart
    nb, nf = chart.n_base, chart.n_fiber
    zero = RationalFunction.zero(chart)
    C = [[zero for _ in range(nb)] for _ in range(nb)]
    M = [[zero for _ in range(nf)] for _ in range(nb)]
    V: dict[Key, RationalFunction] = {}
    for (u, v), c in theta.terms.items():
        if v < nb:
            C[u][v] = c
            C[v][u] = -c
        elif u < nb:
            M[u][v - nb] = c
        else:
            V[((), (u - nb, v - nb))] = c
    return C, M, V


def triple_from_bivector(theta: Multivector, sample_points=None) -> GeometricTriple:
    """Extract the (vertical, connection, horizontal) triple of a bivector.

    Requires the base-base block to be invertible over the rational-function
    field ("horizontally non-degenerate"); denominators introduced by the
    inversion are kept exact.
    """
    if theta.degree != 2:
        raise ValueError(f"expected a bivector, got degree {theta.degree}")
    chart = theta.chart
    nb, nf = chart.n_base, chart.n_fiber
    C, M, V = _bivector_blocks(theta)
    from .linalg import rf_matrix_det

    detC = rf_matrix_det(C, chart)
    if detC.is_zero():
        raise ValueError("not horizontally non-degenerate: base block is singular")
    for point in sample_points or ({},):
        pt = {chart.index(k) if isinstance(k, str) else k: v for k, v in point.items()}
        try:
            value = detC.evaluate(pt)
        except ZeroDivisionError:
            raise ValueError(f"not horizontally non-degenerate at sample point {point}")
        if value == 0:
            raise ValueError(f"not horizontally non-degenerate at sample point {point}")
    Cinv = rf_matrix_inverse(C, chart)

    # connection: hor(bx_i) = bx_i + (C^-1 M)_i^a by_a
    conn_coeffs: dict[tuple[int, int], RationalFunction] = {}
    for i in range(nb):
        for a in range(nf):
            acc = RationalFunction.zero(chart)
            for k in range(nb):
                acc = acc + Cinv[i][k] * M[k][a]
            if not acc.is_zero():
                conn_coeffs[(i, a)] = acc
    conn = ConnectionData(chart, conn_coeffs)

    # horizontal bivector rebuilt from C and the lifts; the rest is vertical
    theta_h = _horizontal_bivector(C, conn)
    theta_v_mv = theta - theta_h
    vert_terms: dict[Key, RationalFunction] = {}
    for (u, v), c in theta_v_mv.terms.items():
        if u < nb or v < nb:
            raise ValueError("internal error: non-vertical remainder in triple extraction")
        vert_terms[((), (u - nb, v - nb))] = c
    vertical = BigradedElement(chart, 2, 0, vert_terms)

    # horizontal 2-form: oriented inverse of the base block
    f_terms: dict[Key, RationalFunction] = {}
    for i in range(nb):
        for j in range(i + 1, nb):
            val = Cinv[i][j] if F_SIGN > 0 else -Cinv[i][j]
            if not val.is_zero():
                f_terms[((i, j), ())] = val
    horizontal = BigradedElement(chart, 0, 2, f_terms)
    return GeometricTriple(vertical, conn, horizontal)


def _horizontal_bivector(C, conn: ConnectionData) -> Multivector:
    chart = conn.chart
    nb, nf = chart.n_base, chart.n_fiber
    lifts = []
    for i in range(nb):
        terms = {(i,): RationalFunction.const(chart, 1)}
        for a in range(nf):
            g = conn.get(i, a)
            if not g.is_zero():
                terms[(nb + a,)] = g
        lifts.append(Multivector(chart, 1, terms))
    out = Multivector(chart, 2)
    for i in range(nb):
        for j in range(i + 1, nb):
            if C[i][j].is_zero():
                continue
            out = out + lifts[i].wedge(lifts[j]).scale(C[i][j])
    return out


def bivector_from_triple(triple: GeometricTriple) -> Multivector:
    """Reconstruct the bivector; inverse of :func:`triple_from_bivector`."""
    chart = triple.chart
    nb = chart.n_base
    fm = _form_matrix(triple.horizontal)
    if F_SIGN < 0:
        fm = [[-e for e in row] for row in fm]
    C = rf_matrix_inverse(fm, chart)
    theta = _horizontal_bivector(C, triple.connection)
    for (_, J), c in triple.vertical.terms.items():
        a, b = J
        theta = theta + Multivector(chart, 2, {(nb + a, nb + b): c})
    return theta


# ---------------------------------------------------------------------------
# structure equations and the total differential
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureResiduals:
    """Exact residuals of the four structure equations of a triple."""

    vertical_square: BigradedElement        # [theta_v, theta_v]
    vertical_transport: BigradedElement     # d_Gamma theta_v
    horizontal_transport: BigradedElement   # d_Gamma F
    curvature_equation: BigradedElement     # Omega_Gamma + CURVATURE_EQ_SIGN * [F, theta_v]

    def as_tuple(self):
        return (
            self.vertical_square,
            self.vertical_transport,
            self.horizontal_transport,
            self.curvature_equation,
        )

    @property
    def all_zero(self) -> bool:
        return all(r.is_zero() for r in self.as_tuple())


def verify_structure_equations(triple: GeometricTriple) -> StructureResiduals:
    tv, conn, f = triple.vertical, triple.connection, triple.horizontal
    r1 = omega_bracket(tv, tv)
    r2 = d_gamma(conn, tv)
    r3 = d_gamma(conn, f)
    bracket = omega_bracket(f, tv)
    r4 = curvature(conn) + (bracket if CURVATURE_EQ_SIGN > 0 else -bracket)
    return StructureResiduals(r1, r2, r3, r4)


@dataclass(frozen=True)
class TotalDifferential:
    """The three homogeneous components of d_theta applied to one element."""

    raise_vertical: BigradedElement   # bidegree (q+1, p)
    raise_form: BigradedElement       # bidegree (q, p+1)
    lower_vertical: BigradedElement   # bidegree (q-1, p+2)

    @property
    def components(self):
        return (self.raise_vertical, self.raise_form, self.lower_vertical)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def total_differential(triple: GeometricTriple, u: BigradedElement) -> TotalDifferential:
    """d_theta u, componentwise; squares to zero when the triple is Poisson."""
    d_v = omega_bracket(triple.vertical, u)
    d_h = d_gamma(triple.connection, u)
    d_f = omega_bracket(triple.horizontal, u)
    if TOTAL_F_SIGN < 0:
        d_f = -d_f
    return TotalDifferential(d_v, d_h, d_f)
