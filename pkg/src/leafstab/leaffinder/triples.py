"""Discrete triples: grid-sampled evaluators for the three triple components.

Two backends share one interface:

* ``PackedBackend`` -- packed fiber polynomials/quotients produced by
  sampling an exact symbolic triple (fiber derivatives exact);
* ``CallableBackend`` -- arbitrary vectorized evaluators, with fiber
  derivatives by central differences (step 1e-6).

Interface shapes, for a section value array ``y`` of shape (m, n1, n2):

* vertical components: (nv, n1, n2) with nv = m(m-1)/2, pairs in
  lexicographic order;
* connection: (2, m, n1, n2);
* horizontal coefficient (the dx1^dx2 component): (n1, n2);
* fiber derivatives append an axis of length m after the component axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from ..bigraded import GeometricTriple
from ..chart import ChartSpec
from ..poly import Poly, RationalFunction
from ..sections import is_first_order_type
from .fields import sample_coefficient
from .grid import Grid

FIBER_FD_STEP = 1e-6


class PackedBackend:
    def __init__(self, grid: Grid, m: int, vert, conn, horiz):
        self.grid = grid
        self.m = m
        self.vert = vert      # list[FieldRational], one per fiber pair
        self.conn = conn      # [i][a] FieldRational
        self.horiz = horiz    # FieldRational
        self.vert_dy = [[f.deriv(b) for b in range(m)] for f in vert]
        self.conn_dy = [[[conn[i][a].deriv(b) for b in range(m)] for a in range(m)] for i in range(2)]

    def eval_vert(self, y):
        nv = len(self.vert)
        out = np.zeros((nv,) + self.grid.shape)
        for v, f in enumerate(self.vert):
            out[v] = f.eval(y)
        return out

    def eval_conn(self, y):
        out = np.zeros((2, self.m) + self.grid.shape)
        for i in range(2):
            for a in range(self.m):
                out[i, a] = self.conn[i][a].eval(y)
        return out

    def eval_horiz(self, y):
        return self.horiz.eval(y)

    def eval_vert_dy(self, y):
        nv = len(self.vert)
        out = np.zeros((nv, self.m) + self.grid.shape)
        for v in range(nv):
            for b in range(self.m):
                out[v, b] = self.vert_dy[v][b].eval(y)
        return out

    def eval_conn_dy(self, y):
        out = np.zeros((2, self.m, self.m) + self.grid.shape)
        for i in range(2):
            for a in range(self.m):
                for b in range(self.m):
                    out[i, a, b] = self.conn_dy[i][a][b].eval(y)
        return out


class CallableBackend:
    def __init__(self, grid: Grid, m: int, vert_fn, conn_fn, horiz_fn):
        self.grid = grid
        self.m = m
        self.vert_fn = vert_fn
        self.conn_fn = conn_fn
        self.horiz_fn = horiz_fn

    def eval_vert(self, y):
        return np.asarray(self.vert_fn(y), dtype=np.float64)

    def eval_conn(self, y):
        return np.asarray(self.conn_fn(y), dtype=np.float64)

    def eval_horiz(self, y):
        return np.asarray(self.horiz_fn(y), dtype=np.float64)

    def _fd(self, fn, y, lead_shape):
        out = np.zeros(lead_shape + (self.m,) + self.grid.shape)
        for b in range(self.m):
            step = np.zeros_like(y)
            step[b] = FIBER_FD_STEP
            plus = np.asarray(fn(y + step), dtype=np.float64)
            minus = np.asarray(fn(y - step), dtype=np.float64)
            out[..., b, :, :] = (plus - minus) / (2 * FIBER_FD_STEP)
        return out

    def eval_vert_dy(self, y):
        nv = self.m * (self.m - 1) // 2
        return self._fd(self.vert_fn, y, (nv,))

    def eval_conn_dy(self, y):
        return self._fd(self.conn_fn, y, (2, self.m))


@dataclass(frozen=True)
class DiscreteTriple:
    """Grid evaluators for a horizontally non-degenerate structure."""

    grid: Grid
    m: int
    backend: object = field(compare=False)
    first_order: bool = False
    fiber_box: tuple[tuple[float, float], ...] | None = None

    @property
    def n_vert(self) -> int:
        return self.m * (self.m - 1) // 2

    @property
    def fiber_pairs(self):
        return list(combinations(range(self.m), 2))

    def check_in_domain(self, values: np.ndarray) -> None:
        if self.fiber_box is None:
            return
        for a, (lo, hi) in enumerate(self.fiber_box):
            if np.any(values[a] < lo) or np.any(values[a] > hi):
                raise ValueError(f"fiber value outside evaluator domain [{lo}, {hi}] in component {a}")

    def in_domain(self, values: np.ndarray) -> bool:
        if self.fiber_box is None:
            return True
        for a, (lo, hi) in enumerate(self.fiber_box):
            if np.any(values[a] < lo) or np.any(values[a] > hi):
                return False
        return True


def sample_triple(
    triple: GeometricTriple,
    grid: Grid,
    params: dict[str, Fraction] | None = None,
    fiber_box=None,
) -> DiscreteTriple:
    """Sample an exact triple over the grid (base must be 2-dimensional).

    Base-periodicity is the caller's concern: coefficients with genuine base
    dependence wrap discontinuously at the seam of the chart.
    """
    chart = triple.chart
    if chart.n_base != 2:
        raise ValueError("discrete triples require a 2-dimensional base")
    params = dict(params or {})
    m = chart.n_fiber
    pairs = list(combinations(range(m), 2))
    vert_map = {}
    for (_, J), c in triple.vertical.terms.items():
        vert_map[J] = c
    vert = [
        sample_coefficient(vert_map.get(p, RationalFunction.zero(chart)), chart, grid, params)
        for p in pairs
    ]
    conn = [
        [sample_coefficient(triple.connection.get(i, a), chart, grid, params) for a in range(m)]
        for i in range(2)
    ]
    hz_coeff = RationalFunction.zero(chart)
    for (I, _), c in triple.horizontal.terms.items():
        if I == (0, 1):
            hz_coeff = c
    horiz = sample_coefficient(hz_coeff, chart, grid, params)
    # first-order detection needs parameter-free comparison only when params
    # appear linearly; substitute exact parameter values first
    symbolic = triple
    if params:
        assignment = {
            chart.index(name): Poly.const(chart, Fraction(value)) for name, value in params.items()
        }
        symbolic = GeometricTriple(
            triple.vertical.map_coefficients(lambda c: c.substitute(assignment)),
            triple.connection.map_coefficients(lambda c: c.substitute(assignment)),
            triple.horizontal.map_coefficients(lambda c: c.substitute(assignment)),
        )
    return DiscreteTriple(
        grid=grid,
        m=m,
        backend=PackedBackend(grid, m, vert, conn, horiz),
        first_order=is_first_order_type(symbolic),
        fiber_box=tuple(fiber_box) if fiber_box else None,
    )


def callable_triple(grid: Grid, m: int, vert_fn, conn_fn, horiz_fn, fiber_box=None) -> DiscreteTriple:
    return DiscreteTriple(
        grid=grid,
        m=m,
        backend=CallableBackend(grid, m, vert_fn, conn_fn, horiz_fn),
        first_order=False,
        fiber_box=tuple(fiber_box) if fiber_box else None,
    )


# ---------------------------------------------------------------------------
# built-in symbolic families on the torus
# ---------------------------------------------------------------------------

def family_chart() -> ChartSpec:
    return ChartSpec(("x1", "x2"), ("y1",))


def _poly_in_y1(chart: ChartSpec, coeffs) -> RationalFunction:
    y = Poly.var(chart, "y1")
    acc = Poly.zero(chart)
    power = Poly.const(chart, 1)
    for c in coeffs:
        acc = acc + power.scale(Fraction(c))
        power = power * y
    return RationalFunction(acc)


def torus_area_family(f_coeffs=(1, 1)) -> GeometricTriple:
    """Product family over the torus: flat connection, no vertical part,
    horizontal form f(y1) dx1^dx2 (f(0) must be nonzero)."""
    chart = family_chart()
    from ..bigraded import BigradedElement, ConnectionData

    f = _poly_in_y1(chart, f_coeffs)
    if f.evaluate({}) == 0:
        raise ValueError("family coefficient must not vanish on the zero section")
    return GeometricTriple(
        BigradedElement(chart, 2, 0),
        ConnectionData.zero(chart),
        BigradedElement(chart, 0, 2, {((0, 1), ()): f}),
    )


def torus_epsilon_family() -> GeometricTriple:
    """Torus family with a constant connection tilt of size eps (a parameter):
    its compact candidate leaves are obstructed for eps != 0."""
    chart = ChartSpec(("x1", "x2"), ("y1",), ("eps",))
    from ..bigraded import BigradedElement, ConnectionData

    eps = RationalFunction.var(chart, "eps")
    return GeometricTriple(
        BigradedElement(chart, 2, 0),
        ConnectionData(chart, {(0, 0): eps}),
        BigradedElement(chart, 0, 2, {((0, 1), ()): RationalFunction.const(chart, 1)}),
    )


def torus_f_shift_family(f_coeffs=(1, 1)) -> GeometricTriple:
    """Area family with the horizontal form shifted by a parameter delta."""
    chart = ChartSpec(("x1", "x2"), ("y1",), ("delta",))
    from ..bigraded import BigradedElement, ConnectionData

    f = _poly_in_y1(chart, f_coeffs) + RationalFunction.var(chart, "delta")
    return GeometricTriple(
        BigradedElement(chart, 2, 0),
        ConnectionData.zero(chart),
        BigradedElement(chart, 0, 2, {((0, 1), ()): f}),
    )


FAMILIES = {
    "torus-area-family": torus_area_family,
    "torus-epsilon": torus_epsilon_family,
    "torus-f-shift": torus_f_shift_family,
}


def make_family(name: str, grid: Grid, params: dict[str, Fraction] | None = None) -> DiscreteTriple:
    """Instantiate a named family on a grid with rational parameter values."""
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    symbolic = FAMILIES[name]()
    needed = symbolic.chart.params
    params = dict(params or {})
    for p in needed:
        params.setdefault(p, Fraction(0))
    box = ((-0.5, 0.5),) if name in ("torus-area-family", "torus-f-shift") else None
    return sample_triple(symbolic, grid, params, fiber_box=box)
