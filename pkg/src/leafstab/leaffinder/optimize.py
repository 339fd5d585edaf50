"""Discrete obstruction, functional, analytic gradient, and projected descent.

The obstruction of a sampled section has a vertical block (the vertical
bivector evaluated on the graph) and a connection block

    c_conn[i, a] = D_i s^a - Gamma_i^a(x, s(x)),

with D_i the periodic central difference.  The functional is the plain
discrete L2 norm squared (cell-area weighted, accumulated in a fixed order).
The gradient is the exact adjoint of the linearized obstruction: fiber
derivatives of the evaluators contract against the obstruction and the
difference operator contributes its transpose (minus itself, by periodicity
and antisymmetry of the central stencil).

The leaf search is steepest descent with Armijo backtracking, restricted to
the orthogonal complement of the flat-kernel basis of the reference
structure, so the kernel component of the start is preserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .grid import DiscreteSection, Grid
from .triples import DiscreteTriple

KERNEL_SV_TOL = 1e-8
KERNEL_GAP_FACTOR = 1e3
STEP_UNDERFLOW = 1e-18
# squared-gradient floor; only an (essentially) exactly critical point stops
# the search, stagnation is otherwise detected by step underflow
GRAD_FLOOR = 1e-40


def discrete_obstruction(triple: DiscreteTriple, s: DiscreteSection) -> tuple[np.ndarray, np.ndarray]:
    """(vertical block (nv,n1,n2), connection block (2,m,n1,n2)) at the graph of s."""
    if s.m != triple.m or s.grid != triple.grid:
        raise ValueError("section shape does not match the triple")
    triple.check_in_domain(s.values)
    y = s.values
    vert = triple.backend.eval_vert(y)
    gamma = triple.backend.eval_conn(y)
    grid = triple.grid
    conn = np.empty_like(gamma)
    inv2 = (0.5 / grid.h1, 0.5 / grid.h2)
    for i in range(2):
        for a in range(triple.m):
            conn[i, a] = kernels.central_diff(y[a], i, inv2[i]) - gamma[i, a]
    return vert, conn


def functional(triple: DiscreteTriple, s: DiscreteSection) -> float:
    """Cell-area-weighted sum of squares of all obstruction components."""
    vert, conn = discrete_obstruction(triple, s)
    area = triple.grid.cell_area
    total = kernels.weighted_sumsq(conn, area)
    if vert.size:
        total += kernels.weighted_sumsq(vert, area)
    return total


def residual_norm(triple: DiscreteTriple, s: DiscreteSection) -> float:
    return float(np.sqrt(functional(triple, s)))


def gradient(triple: DiscreteTriple, s: DiscreteSection) -> np.ndarray:
    """Exact gradient of the functional with respect to the section values.

    Matches central finite differences of :func:`functional` entrywise.
    """
    vert, conn = discrete_obstruction(triple, s)
    y = s.values
    grid = triple.grid
    area = grid.cell_area
    m = triple.m
    grad = np.zeros_like(y)
    dvert = triple.backend.eval_vert_dy(y) if triple.n_vert else None
    dconn = triple.backend.eval_conn_dy(y)
    inv2 = (0.5 / grid.h1, 0.5 / grid.h2)
    for b in range(m):
        acc = np.zeros(grid.shape)
        if dvert is not None:
            for v in range(triple.n_vert):
                acc += vert[v] * dvert[v, b]
        for i in range(2):
            for a in range(m):
                acc -= conn[i, a] * dconn[i, a, b]
            # adjoint of the central difference: D^T = -D on a periodic grid
            acc -= kernels.central_diff(conn[i, b], i, inv2[i])
        grad[b] = 2.0 * area * acc
    return grad


# ---------------------------------------------------------------------------
# kernel of the linearized operator
# ---------------------------------------------------------------------------

def _forward_difference_matrix(n: int, inv_h: float) -> np.ndarray:
    # One-sided stencil on purpose: the periodic central difference kills the
    # alternating (Nyquist) modes, which would inflate the discrete null
    # space with sawtooth sections that correspond to no flat section.  The
    # forward difference vanishes exactly on constants and nothing else.
    d = np.zeros((n, n))
    for i in range(n):
        d[i, (i + 1) % n] = inv_h
        d[i, i] = -inv_h
    return d


def linearized_operator_matrix(triple: DiscreteTriple) -> np.ndarray:
    """Dense matrix of w -> (vertical linearization, covariant derivative) at s=0."""
    grid = triple.grid
    m = triple.m
    n = grid.n1 * grid.n2
    zero = DiscreteSection.zero(grid, m)
    dvert = triple.backend.eval_vert_dy(zero.values)
    dconn = triple.backend.eval_conn_dy(zero.values)
    d1 = np.kron(_forward_difference_matrix(grid.n1, 1.0 / grid.h1), np.eye(grid.n2))
    d2 = np.kron(np.eye(grid.n1), _forward_difference_matrix(grid.n2, 1.0 / grid.h2))
    diffs = (d1, d2)
    nv = triple.n_vert
    rows = (nv + 2 * m) * n
    cols = m * n
    op = np.zeros((rows, cols))
    for v in range(nv):
        for b in range(m):
            op[v * n : (v + 1) * n, b * n : (b + 1) * n] = np.diag(dvert[v, b].ravel())
    base = nv * n
    for i in range(2):
        for a in range(m):
            r0 = base + (i * m + a) * n
            for b in range(m):
                block = -np.diag(dconn[i, a, b].ravel())
                if b == a:
                    block = block + diffs[i]
                op[r0 : r0 + n, b * n : (b + 1) * n] += block
    return op


def kernel_basis(triple: DiscreteTriple) -> list[DiscreteSection]:
    """Orthonormal basis (discrete inner product) of the linearized null space.

    Raises when the singular spectrum has no clear gap at the zero threshold.
    """
    grid = triple.grid
    m = triple.m
    op = linearized_operator_matrix(triple)
    _, svals, vt = np.linalg.svd(op, full_matrices=True)
    n_cols = vt.shape[0]
    scale = max(float(svals[0]) if svals.size else 0.0, 1.0)
    tol = KERNEL_SV_TOL * scale
    padded = np.concatenate([svals, np.zeros(n_cols - svals.size)])
    null_mask = padded < tol
    ambiguous = (padded >= tol) & (padded < tol * KERNEL_GAP_FACTOR)
    if np.any(ambiguous):
        raise ValueError("rank decision failure: singular values too close to the null threshold")
    area = grid.cell_area
    basis = []
    for k in range(n_cols):
        if not null_mask[k]:
            continue
        vec = vt[k].reshape(m, grid.n1, grid.n2)
        basis.append(DiscreteSection(grid, vec / np.sqrt(area)))
    return basis


def inner(grid: Grid, u: np.ndarray, v: np.ndarray) -> float:
    return float(np.dot(u.ravel(), v.ravel()) * grid.cell_area)


def project_off_kernel(grid: Grid, values: np.ndarray, basis: list[DiscreteSection]) -> np.ndarray:
    out = values.copy()
    for k in basis:
        out = out - inner(grid, values, k.values) * k.values
    return out


def kernel_coordinates(grid: Grid, values: np.ndarray, basis: list[DiscreteSection]) -> tuple[float, ...]:
    return tuple(inner(grid, values, k.values) for k in basis)


# ---------------------------------------------------------------------------
# leaf search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FindLeafParams:
    tol: float = 1e-10
    max_iter: int = 5000
    armijo_c1: float = 1e-4
    shrink: float = 0.5
    initial_step: float = 1.0


@dataclass(frozen=True)
class OptimReport:
    final_section: DiscreteSection
    residual: float
    iterations: int
    converged: bool
    kernel_component: tuple[float, ...]

    def __post_init__(self):
        if self.converged and not self.residual <= self._tol_used:
            raise ValueError("converged report with residual above tolerance")

    # recorded by find_leaf so the invariant above is checkable
    _tol_used: float = 0.0


def find_leaf(
    t_ref: DiscreteTriple,
    triple: DiscreteTriple,
    s0: DiscreteSection,
    params: FindLeafParams | None = None,
) -> OptimReport:
    """Projected steepest descent for a section annihilating the obstruction.

    The search moves in the orthogonal complement of the reference kernel;
    termination is residual <= tol (converged), step underflow, or the
    iteration cap (both reported as non-converged with the best residual).
    """
    params = params or FindLeafParams()
    grid = triple.grid
    basis = kernel_basis(t_ref)

    def safe_value(section: DiscreteSection) -> float:
        if not triple.in_domain(section.values):
            return float("inf")
        return functional(triple, section)

    s = s0
    value = functional(triple, s)
    best = s
    best_value = value
    step = params.initial_step
    iterations = 0
    converged = float(np.sqrt(value)) <= params.tol
    while not converged and iterations < params.max_iter:
        g = project_off_kernel(grid, gradient(triple, s), basis)
        slope = float(np.dot(g.ravel(), g.ravel()))
        if slope <= GRAD_FLOOR:
            break
        alpha = step
        accepted = None
        while alpha >= STEP_UNDERFLOW:
            candidate = s.replace(s.values - alpha * g)
            cand_value = safe_value(candidate)
            if cand_value <= value - params.armijo_c1 * alpha * slope:
                accepted = (candidate, cand_value)
                break
            alpha *= params.shrink
        if accepted is None:
            break
        s, value = accepted
        step = min(alpha / params.shrink, 1e6)
        iterations += 1
        if value < best_value:
            best, best_value = s, value
        if float(np.sqrt(value)) <= params.tol:
            converged = True
    final = s if converged else best
    final_value = value if converged else best_value
    return OptimReport(
        final_section=final,
        residual=float(np.sqrt(final_value)),
        iterations=iterations,
        converged=converged,
        kernel_component=kernel_coordinates(grid, final.values, basis),
        _tol_used=params.tol,
    )


# ---------------------------------------------------------------------------
# strong obstruction on (section, one-form) pairs
# ---------------------------------------------------------------------------

def strong_obstruction(
    triple: DiscreteTriple,
    s: DiscreteSection,
    beta: np.ndarray,
    reference: DiscreteTriple | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Obstruction extended by the symplectic comparison block.

    ``beta`` is a discrete 1-form (shape (2, n1, n2)); the third block is the
    horizontal coefficient on the graph minus the leaf form of the reference
    structure (its zero-section value; default: the triple itself) plus the
    curl of beta.  Only the evaluation is provided; no joint optimization.
    """
    beta = np.asarray(beta, dtype=np.float64)
    if beta.shape != (2,) + triple.grid.shape:
        raise ValueError("beta must be a discrete one-form of shape (2, n1, n2)")
    vert, conn = discrete_obstruction(triple, s)
    grid = triple.grid
    zero = DiscreteSection.zero(grid, triple.m)
    omega_source = reference if reference is not None else triple
    omega = omega_source.backend.eval_horiz(zero.values)
    f_on_graph = triple.backend.eval_horiz(s.values)
    curl = kernels.central_diff(beta[1], 0, 0.5 / grid.h1) - kernels.central_diff(
        beta[0], 1, 0.5 / grid.h2
    )
    return vert, conn, f_on_graph - omega + curl
