"""Coordinate charts: ordered base/fiber variables plus free parameter symbols.

A chart fixes, once and for all, the names and the ordering of the
coordinates used by every symbolic object in the package:

* ``base_vars``   -- coordinates on the base (``x1 x2 ...``),
* ``fiber_vars``  -- fiberwise coordinates (``y1 y2 ...``),
* ``params``      -- extra symbols that behave as constants: they may
  appear in coefficients but carry no coordinate direction, so no
  derivative or multivector index ever refers to them.

Variables are addressed internally by their index in
``base_vars + fiber_vars + params``.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ChartSpec:
    base_vars: tuple[str, ...]
    fiber_vars: tuple[str, ...] = ()
    params: tuple[str, ...] = ()
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        base = tuple(self.base_vars)
        fiber = tuple(self.fiber_vars)
        params = tuple(self.params)
        object.__setattr__(self, "base_vars", base)
        object.__setattr__(self, "fiber_vars", fiber)
        object.__setattr__(self, "params", params)
        names = base + fiber + params
        if len(base) < 1:
            raise ValueError("chart needs at least one base variable")
        if len(set(names)) != len(names):
            raise ValueError(f"chart variable names must be unique: {names}")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})

    @property
    def n_base(self) -> int:
        return len(self.base_vars)

    @property
    def n_fiber(self) -> int:
        return len(self.fiber_vars)

    @property
    def all_vars(self) -> tuple[str, ...]:
        return self.base_vars + self.fiber_vars + self.params

    @property
    def n_vars(self) -> int:
        return len(self.all_vars)

    # geometric directions = base + fiber; params have no direction
    @property
    def n_geom(self) -> int:
        return self.n_base + self.n_fiber

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r} on chart {self.all_vars}") from None

    def is_base(self, idx: int) -> bool:
        return 0 <= idx < self.n_base

    def is_fiber(self, idx: int) -> bool:
        return self.n_base <= idx < self.n_geom

    def fiber_index(self, idx: int) -> int:
        """Position of a chart index within the fiber block."""
        if not self.is_fiber(idx):
            raise ValueError(f"variable {self.all_vars[idx]!r} is not a fiber variable")
        return idx - self.n_base

    def name(self, idx: int) -> str:
        return self.all_vars[idx]


def check_same_chart(a, b) -> None:
    if a.chart != b.chart:
        raise ValueError(f"chart mismatch: {a.chart.all_vars} vs {b.chart.all_vars}")
