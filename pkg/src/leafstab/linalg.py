"""Exact linear algebra: fraction-free elimination over the rationals and
over polynomial rings.

Rational matrices are lists of lists of ``Fraction``.  Ranks and null
spaces are computed by Bareiss elimination on an integer-scaled copy, so
no floating point and no rational blow-up beyond what the answer needs.
Matrices over the rational-function field are handled by clearing
denominators and running the same fraction-free scheme with exact
polynomial division.
"""

from __future__ import annotations

from fractions import Fraction

from .chart import ChartSpec
from .poly import Poly, RationalFunction, poly_exact_div


# ---------------------------------------------------------------------------
# Fraction matrices
# ---------------------------------------------------------------------------

def _to_integer_rows(matrix):
    rows = []
    for row in matrix:
        denom = 1
        for entry in row:
            f = Fraction(entry)
            denom = denom * f.denominator // _gcd(denom, f.denominator)
        rows.append([int(Fraction(entry) * denom) for entry in row])
    return rows


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank(matrix) -> int:
    """Exact rank via integer Bareiss elimination."""
    if not matrix or not matrix[0]:
        return 0
    m = _to_integer_rows(matrix)
    n_rows, n_cols = len(m), len(m[0])
    prev = 1
    r = 0
    for col in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][col]
        for i in range(r + 1, n_rows):
            for j in range(col + 1, n_cols):
                m[i][j] = (pivot * m[i][j] - m[i][col] * m[r][j]) // prev
            m[i][col] = 0
        prev = pivot
        r += 1
        if r == n_rows:
            break
    return r


def rref(matrix):
    """Reduced row echelon form over Fractions; returns (rref, pivot_cols)."""
    m = [[Fraction(e) for e in row] for row in matrix]
    if not m or not m[0]:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][col]
        m[r] = [e * inv for e in m[r]]
        for i in range(n_rows):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def nullspace(matrix):
    """Basis of the right null space (list of Fraction column vectors)."""
    if not matrix or not matrix[0]:
        n_cols = len(matrix[0]) if matrix else 0
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    reduced, pivots = rref(matrix)
    n_cols = len(matrix[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    return basis


def solve(matrix, rhs):
    """One solution of M x = rhs over Fractions, or None if inconsistent."""
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    aug = [list(matrix[i]) + [Fraction(rhs[i])] for i in range(n_rows)]
    reduced, pivots = rref(aug)
    for row in reduced:
        if all(e == 0 for e in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * n_cols
    for r, p in enumerate(pivots):
        if p == n_cols:
            return None
        x[p] = reduced[r][-1]
    return x


# ---------------------------------------------------------------------------
# Matrices over the rational-function field
# ---------------------------------------------------------------------------

def poly_det_bareiss(matrix: list[list[Poly]], chart: ChartSpec) -> Poly:
    """Determinant of a polynomial matrix by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return Poly.const(chart, 1)
    m = [row[:] for row in matrix]
    prev = Poly.const(chart, 1)
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = None
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    swap = i
                    break
            if swap is None:
                return Poly.zero(chart)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = poly_exact_div(num, prev)
            m[i][k] = Poly.zero(chart)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def rf_matrix_det(matrix: list[list[RationalFunction]], chart: ChartSpec) -> RationalFunction:
    """Determinant over the rational-function field (denominators cleared row-wise)."""
    n = len(matrix)
    if n == 0:
        return RationalFunction.const(chart, 1)
    cleared = []
    den_product = Poly.const(chart, 1)
    for row in matrix:
        row_den = Poly.const(chart, 1)
        for entry in row:
            row_den = row_den * entry.den
        cleared.append([entry.num * poly_exact_div(row_den, entry.den) for entry in row])
        den_product = den_product * row_den
    det = poly_det_bareiss(cleared, chart)
    return RationalFunction(det, den_product)


def rf_matrix_inverse(matrix: list[list[RationalFunction]], chart: ChartSpec) -> list[list[RationalFunction]]:
    """Inverse via determinant and adjugate, both fraction-free underneath."""
    n = len(matrix)
    det = rf_matrix_det(matrix, chart)
    if det.is_zero():
        raise ValueError("matrix is singular over the rational-function field")
    if n == 1:
        return [[RationalFunction.const(chart, 1) / matrix[0][0]]]
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [matrix[r][c] for c in range(n) if c != j]
                for r in range(n) if r != i
            ]
            cof = rf_matrix_det(minor, chart)
            if (i + j) % 2:
                cof = -cof
            inv[j][i] = cof / det
    return inv


def rf_matrix_mul(a, b, chart: ChartSpec):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[RationalFunction.zero(chart) for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            acc = RationalFunction.zero(chart)
            for k in range(inner):
                acc = acc + a[i][k] * b[k][j]
            out[i][j] = acc
    return out
