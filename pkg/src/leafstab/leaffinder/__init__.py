"""Numerical leaf finding on a periodic grid."""

from .grid import DiscreteSection, Grid
from .kernels import get_backend, set_backend
from .optimize import (
    FindLeafParams,
    OptimReport,
    discrete_obstruction,
    find_leaf,
    functional,
    gradient,
    kernel_basis,
    residual_norm,
    strong_obstruction,
)
from .triples import (
    DiscreteTriple,
    FAMILIES,
    callable_triple,
    make_family,
    sample_triple,
)

__all__ = [
    "DiscreteSection",
    "DiscreteTriple",
    "FAMILIES",
    "FindLeafParams",
    "Grid",
    "OptimReport",
    "callable_triple",
    "discrete_obstruction",
    "find_leaf",
    "functional",
    "get_backend",
    "gradient",
    "kernel_basis",
    "make_family",
    "residual_norm",
    "sample_triple",
    "set_backend",
    "strong_obstruction",
]
