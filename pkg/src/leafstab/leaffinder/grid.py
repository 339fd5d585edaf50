"""Periodic grids on the flat two-torus and sampled sections."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid: n1 x n2 points on [0, 2pi) x [0, 2pi)."""

    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 8 or self.n2 < 8:
            raise ValueError("grid needs at least 8 points per periodic direction")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def h1(self) -> float:
        return TWO_PI / self.n1

    @property
    def h2(self) -> float:
        return TWO_PI / self.n2

    @property
    def cell_area(self) -> float:
        return self.h1 * self.h2

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.arange(self.n1) * self.h1,
            np.arange(self.n2) * self.h2,
        )

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        x1, x2 = self.axes()
        return np.meshgrid(x1, x2, indexing="ij")


@dataclass(frozen=True)
class DiscreteSection:
    """Sampled section: one real value per fiber component and grid point."""

    grid: Grid
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 3 or vals.shape[1:] != self.grid.shape:
            raise ValueError(f"section values must have shape (m, {self.grid.n1}, {self.grid.n2})")
        if not np.all(np.isfinite(vals)):
            raise ValueError("section values must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @classmethod
    def zero(cls, grid: Grid, m: int) -> "DiscreteSection":
        return cls(grid, np.zeros((m,) + grid.shape))

    @classmethod
    def constant(cls, grid: Grid, *levels: float) -> "DiscreteSection":
        vals = np.stack([np.full(grid.shape, float(v)) for v in levels])
        return cls(grid, vals)

    def replace(self, values: np.ndarray) -> "DiscreteSection":
        return DiscreteSection(self.grid, values)
