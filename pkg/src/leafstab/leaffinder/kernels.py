"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Three kernels dominate the optimizer's runtime: evaluating packed fiber
polynomials over the grid, periodic central differences, and the weighted
sum-of-squares reduction.  Each has a numba ``@njit`` implementation and a
vectorized numpy implementation.  The active path is chosen at import time:

* ``LEAFSTAB_NUMBA=0``  force the numpy path;
* ``LEAFSTAB_NUMBA=1``  require numba (ImportError if missing);
* unset                 use numba when importable, else numpy.

``set_backend`` switches paths at runtime (used by tests and the benchmark).
The numba reduction accumulates in strict row-major element order; the numpy
fallback uses numpy's fixed pairwise order over the same row-major layout.
Both paths are individually deterministic and agree to roundoff.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None
    HAS_NUMBA = False


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _poly_eval_numpy(exps: np.ndarray, coefs: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Sum_t coefs[t] * prod_a y[a] ** exps[t, a]; shapes (T,m), (T,n1,n2), (m,n1,n2)."""
    n1, n2 = coefs.shape[1], coefs.shape[2]
    out = np.zeros((n1, n2))
    for t in range(exps.shape[0]):
        term = coefs[t].copy()
        for a in range(exps.shape[1]):
            e = exps[t, a]
            if e == 1:
                term = term * y[a]
            elif e > 1:
                term = term * y[a] ** e
        out += term
    return out


def _central_diff_numpy(f: np.ndarray, axis: int, inv2h: float) -> np.ndarray:
    return (np.roll(f, -1, axis=axis) - np.roll(f, 1, axis=axis)) * inv2h


def _weighted_sumsq_numpy(fields: np.ndarray, weight: float) -> float:
    flat = np.ascontiguousarray(fields).ravel()
    return float(np.dot(flat, flat) * weight)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _poly_eval_numba(exps, coefs, y):  # pragma: no cover - compiled
        nt, m = exps.shape
        n1, n2 = coefs.shape[1], coefs.shape[2]
        out = np.zeros((n1, n2))
        for t in range(nt):
            for i in range(n1):
                for j in range(n2):
                    val = coefs[t, i, j]
                    for a in range(m):
                        e = exps[t, a]
                        for _ in range(e):
                            val *= y[a, i, j]
                    out[i, j] += val
        return out

    @njit(cache=True)
    def _central_diff_numba(f, axis, inv2h):  # pragma: no cover - compiled
        n1, n2 = f.shape
        out = np.empty((n1, n2))
        if axis == 0:
            for i in range(n1):
                ip = i + 1 if i + 1 < n1 else 0
                im = i - 1 if i - 1 >= 0 else n1 - 1
                for j in range(n2):
                    out[i, j] = (f[ip, j] - f[im, j]) * inv2h
        else:
            for i in range(n1):
                for j in range(n2):
                    jp = j + 1 if j + 1 < n2 else 0
                    jm = j - 1 if j - 1 >= 0 else n2 - 1
                    out[i, j] = (f[i, jp] - f[i, jm]) * inv2h
        return out

    @njit(cache=True)
    def _weighted_sumsq_numba(fields, weight):  # pragma: no cover - compiled
        flat = fields.ravel()
        acc = 0.0
        for k in range(flat.shape[0]):
            acc += flat[k] * flat[k]
        return acc * weight


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _default_backend() -> str:
    env = os.environ.get("LEAFSTAB_NUMBA")
    if env == "0":
        return "numpy"
    if env == "1":
        if not HAS_NUMBA:
            raise ImportError("LEAFSTAB_NUMBA=1 but numba is not importable")
        return "numba"
    return "numba" if HAS_NUMBA else "numpy"


_BACKEND = _default_backend()


def get_backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    if name not in ("numpy", "numba"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAS_NUMBA:
        raise ImportError("numba backend requested but numba is not importable")
    _BACKEND = name


def poly_eval(exps: np.ndarray, coefs: np.ndarray, y: np.ndarray) -> np.ndarray:
    if exps.shape[0] == 0:
        return np.zeros((coefs.shape[1], coefs.shape[2])) if coefs.size else np.zeros(y.shape[1:])
    if _BACKEND == "numba":
        return _poly_eval_numba(exps, coefs, y)
    return _poly_eval_numpy(exps, coefs, y)


def central_diff(f: np.ndarray, axis: int, inv2h: float) -> np.ndarray:
    if _BACKEND == "numba":
        return _central_diff_numba(f, axis, inv2h)
    return _central_diff_numpy(f, axis, inv2h)


def weighted_sumsq(fields: np.ndarray, weight: float) -> float:
    fields = np.ascontiguousarray(fields, dtype=np.float64)
    if _BACKEND == "numba":
        return float(_weighted_sumsq_numba(fields, weight))
    return _weighted_sumsq_numpy(fields, weight)


def apply_thread_cap() -> None:
    """Honor LEAFSTAB_THREADS; the kernels are serial, so this only caps numba."""
    cap = os.environ.get("LEAFSTAB_THREADS")
    if cap and HAS_NUMBA:
        import numba

        numba.set_num_threads(max(1, min(int(cap), numba.config.NUMBA_NUM_THREADS)))
