"""Packed fiber-polynomial evaluators over a grid.

A grid field is a polynomial in the fiber variables whose coefficients are
arrays sampled over the base grid:

    value(x, y) = sum_t coefs[t](x) * prod_a y_a ** exps[t, a].

Quotients of two such polynomials cover triples whose extraction introduced
fiber-dependent denominators.  Fiber derivatives of packed fields are exact
(term rewriting plus the quotient rule), so analytic gradients need no
finite differencing on this backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..chart import ChartSpec
from ..poly import Poly, RationalFunction
from .grid import Grid
from . import kernels


@dataclass(frozen=True)
class FieldPoly:
    """Fiber polynomial with grid-sampled coefficients."""

    exps: np.ndarray   # (T, m) int64
    coefs: np.ndarray  # (T, n1, n2) float64

    def __post_init__(self):
        exps = np.asarray(self.exps, dtype=np.int64)
        coefs = np.asarray(self.coefs, dtype=np.float64)
        if exps.ndim != 2 or coefs.ndim != 3 or exps.shape[0] != coefs.shape[0]:
            raise ValueError("expected exponents (T, m) and coefficients (T, n1, n2)")
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "coefs", coefs)

    @classmethod
    def zero(cls, m: int, grid: Grid) -> "FieldPoly":
        return cls(np.zeros((0, m), dtype=np.int64), np.zeros((0,) + grid.shape))

    @classmethod
    def constant(cls, value: float, m: int, grid: Grid) -> "FieldPoly":
        if value == 0.0:
            return cls.zero(m, grid)
        return cls(np.zeros((1, m), dtype=np.int64), np.full((1,) + grid.shape, float(value)))

    @property
    def n_terms(self) -> int:
        return self.exps.shape[0]

    def eval(self, y: np.ndarray) -> np.ndarray:
        if self.n_terms == 0:
            return np.zeros(y.shape[1:])
        return kernels.poly_eval(self.exps, self.coefs, y)

    def deriv(self, b: int) -> "FieldPoly":
        rows = []
        coefs = []
        for t in range(self.n_terms):
            e = self.exps[t, b]
            if e == 0:
                continue
            new = self.exps[t].copy()
            new[b] = e - 1
            rows.append(new)
            coefs.append(self.coefs[t] * e)
        if not rows:
            return FieldPoly(np.zeros((0, self.exps.shape[1]), dtype=np.int64),
                             np.zeros((0,) + self.coefs.shape[1:]))
        return FieldPoly(np.stack(rows), np.stack(coefs))

    def mul(self, other: "FieldPoly") -> "FieldPoly":
        if self.n_terms == 0 or other.n_terms == 0:
            return FieldPoly(np.zeros((0, self.exps.shape[1]), dtype=np.int64),
                             np.zeros((0,) + self.coefs.shape[1:]))
        rows = []
        coefs = []
        for t1 in range(self.n_terms):
            for t2 in range(other.n_terms):
                rows.append(self.exps[t1] + other.exps[t2])
                coefs.append(self.coefs[t1] * other.coefs[t2])
        return FieldPoly(np.stack(rows), np.stack(coefs))

    def sub(self, other: "FieldPoly") -> "FieldPoly":
        if other.n_terms == 0:
            return self
        if self.n_terms == 0:
            return FieldPoly(other.exps.copy(), -other.coefs)
        return FieldPoly(np.concatenate([self.exps, other.exps]),
                         np.concatenate([self.coefs, -other.coefs]))

    def is_zero_data(self) -> bool:
        return self.n_terms == 0 or not np.any(self.coefs)


@dataclass(frozen=True)
class FieldRational:
    """Quotient of packed fiber polynomials; den=None means denominator one."""

    num: FieldPoly
    den: FieldPoly | None = None

    def eval(self, y: np.ndarray) -> np.ndarray:
        top = self.num.eval(y)
        if self.den is None:
            return top
        bottom = self.den.eval(y)
        return top / bottom

    def deriv(self, b: int) -> "FieldRational":
        if self.den is None:
            return FieldRational(self.num.deriv(b))
        num = self.num.deriv(b).mul(self.den).sub(self.num.mul(self.den.deriv(b)))
        return FieldRational(num, self.den.mul(self.den))

    def is_zero_data(self) -> bool:
        return self.num.is_zero_data()


# ---------------------------------------------------------------------------
# sampling exact coefficients over a grid
# ---------------------------------------------------------------------------

def _poly_on_grid(p: Poly, chart: ChartSpec, grid: Grid, params: dict[str, Fraction]) -> FieldPoly:
    """Pack an exact polynomial: base variables sampled, fiber exponents kept."""
    if chart.n_base != 2:
        raise ValueError("grid sampling requires a 2-dimensional base")
    x1, x2 = grid.mesh()
    nb, nf = chart.n_base, chart.n_fiber
    buckets: dict[tuple[int, ...], np.ndarray] = {}
    for exp, coeff in p.terms.items():
        value = float(coeff)
        for pidx, pname in enumerate(chart.params):
            e = exp[nb + nf + pidx]
            if e:
                if pname not in params:
                    raise ValueError(f"no value supplied for parameter {pname!r}")
                value *= float(Fraction(params[pname])) ** e
        arr = np.full(grid.shape, value)
        if exp[0]:
            arr = arr * x1 ** exp[0]
        if exp[1]:
            arr = arr * x2 ** exp[1]
        fiber_exp = tuple(exp[nb : nb + nf])
        if fiber_exp in buckets:
            buckets[fiber_exp] = buckets[fiber_exp] + arr
        else:
            buckets[fiber_exp] = arr
    if not buckets:
        return FieldPoly.zero(nf, grid)
    keys = sorted(buckets)
    exps = np.array(keys, dtype=np.int64).reshape(len(keys), nf)
    coefs = np.stack([buckets[k] for k in keys])
    return FieldPoly(exps, coefs)


def sample_coefficient(
    c: RationalFunction, chart: ChartSpec, grid: Grid, params: dict[str, Fraction]
) -> FieldRational:
    num = _poly_on_grid(c.num, chart, grid, params)
    if c.den.is_constant():
        scale = float(c.den.constant_value())
        if scale != 1.0:
            num = FieldPoly(num.exps, num.coefs / scale)
        return FieldRational(num)
    den = _poly_on_grid(c.den, chart, grid, params)
    return FieldRational(num, den)
