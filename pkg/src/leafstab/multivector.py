"""Multivector fields, differential forms, and the Schouten bracket.

Conventions (fixed once here, enforced by the property-test suite):

* on vector fields the bracket is the usual Lie bracket, and
  ``[X, f] = X(f)`` for a function ``f``;
* graded antisymmetry   ``[X, Y] = -(-1)^((p-1)(q-1)) [Y, X]``;
* graded Leibniz        ``[X, Y ^ Z] = [X, Y] ^ Z + (-1)^((p-1) q) Y ^ [X, Z]``;
* a p-vector evaluates against p one-forms by the determinant rule with no
  1/p! factor, so ``(dx1 ^ dx2)`` paired with ``(bx1 ^ bx2)`` gives 1 and the
  bivector ``bx1 ^ bx2`` induces the function bracket ``{x1, x2} = 1``;
* the anchor is ``pi#(a) = pi(a, .)`` so that ``pi#(df)`` is the Hamiltonian
  field of ``f``.

With these choices the square ``[pi, pi]`` of a bivector measures the failure
of the Jacobi identity with the global sign pinned by

    ``[pi, pi](df, dg, dh) = -2 * ({{f,g},h} + {{g,h},f} + {{h,f},g})``.

The sign on the right is forced by the bracket axioms above together with the
determinant pairing; tests assert it on the recorded counterexamples.

The bracket is implemented on decomposable monomials by bi-Leibniz reduction
to vector-field brackets and derivations, then extended linearly.
"""

from __future__ import annotations

from typing import Mapping

from .chart import ChartSpec, check_same_chart
from .poly import RationalFunction

Index = tuple[int, ...]


def merge_indices(i1: Index, i2: Index) -> tuple[int, Index] | None:
    """Sort the concatenation of two strictly increasing index tuples.

    Returns (sign, merged) or None when an index repeats.
    """
    combined = list(i1 + i2)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(combined)):
        j = i
        while j > 0 and combined[j - 1] > combined[j]:
            combined[j - 1], combined[j] = combined[j], combined[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(combined, combined[1:]):
        if a == b:
            return None
    return sign, tuple(combined)


class _GradedTerms:
    """Shared storage/arithmetic for multivectors and forms."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: ChartSpec, degree: int, terms: Mapping[Index, RationalFunction] | None = None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        self.chart = chart
        self.degree = degree
        clean: dict[Index, RationalFunction] = {}
        if terms:
            for idx, coeff in terms.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise ValueError(f"index {idx} does not match degree {degree}")
                if any(not (0 <= k < chart.n_geom) for k in idx):
                    raise ValueError(f"index {idx} outside chart directions")
                if any(a >= b for a, b in zip(idx, idx[1:])):
                    raise ValueError(f"index {idx} is not strictly increasing")
                if coeff.is_zero():
                    continue
                clean[idx] = coeff
        self.terms = {k: clean[k] for k in sorted(clean)}

    def is_zero(self) -> bool:
        return not self.terms

    def _binary(self, other, op):
        check_same_chart(self, other)
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        out = dict(self.terms)
        for idx, c in other.terms.items():
            s = out.get(idx)
            s = op(s, c) if s is not None else op(None, c)
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
        degree = self.degree if self.terms or not other.terms else other.degree
        return type(self)(self.chart, degree, out)

    def __add__(self, other):
        return self._binary(other, lambda s, c: s + c if s is not None else c)

    def __sub__(self, other):
        return self._binary(other, lambda s, c: s - c if s is not None else -c)

    def __neg__(self):
        return type(self)(self.chart, self.degree, {k: -c for k, c in self.terms.items()})

    def scale(self, factor):
        if isinstance(factor, RationalFunction):
            f = factor
        else:
            f = RationalFunction.const(self.chart, factor)
        return type(self)(self.chart, self.degree, {k: c * f for k, c in self.terms.items()})

    def wedge(self, other):
        check_same_chart(self, other)
        out: dict[Index, RationalFunction] = {}
        for i1, c1 in self.terms.items():
            for i2, c2 in other.terms.items():
                merged = merge_indices(i1, i2)
                if merged is None:
                    continue
                sign, idx = merged
                c = c1 * c2
                if sign < 0:
                    c = -c
                if idx in out:
                    s = out[idx] + c
                    if s.is_zero():
                        del out[idx]
                    else:
                        out[idx] = s
                else:
                    out[idx] = c
        return type(self)(self.chart, self.degree + other.degree, out)

    def __eq__(self, other):
        if type(other) is not type(self) or self.chart != other.chart:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        raise TypeError(f"{type(self).__name__} is not hashable")

    def _format(self, symbol: str) -> str:
        if not self.terms:
            return "0"
        names = self.chart.all_vars
        parts = []
        for idx, c in self.terms.items():
            basis = "^".join(f"{symbol}{names[k]}" for k in idx) if idx else "1"
            parts.append(f"({c}) {basis}")
        return " + ".join(parts)


class Multivector(_GradedTerms):
    """Antisymmetric contravariant field: map increasing index tuple -> coefficient."""

    def __repr__(self):
        return f"Multivector<{self.degree}>[{self._format('b')}]"


class Form(_GradedTerms):
    """Antisymmetric covariant field with the same storage conventions."""

    def __repr__(self):
        return f"Form<{self.degree}>[{self._format('d')}]"

    def exterior_derivative(self) -> "Form":
        chart = self.chart
        out = Form(chart, self.degree + 1)
        for idx, c in self.terms.items():
            for u in range(chart.n_geom):
                dc = c.partial(u)
                if dc.is_zero():
                    continue
                merged = merge_indices((u,), idx)
                if merged is None:
                    continue
                sign, key = merged
                out = out + Form(chart, self.degree + 1, {key: dc if sign > 0 else -dc})
        return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def multivector(chart: ChartSpec, degree: int, terms=None) -> Multivector:
    return Multivector(chart, degree, _coerce_terms(chart, terms))

def form(chart: ChartSpec, degree: int, terms=None) -> Form:
    return Form(chart, degree, _coerce_terms(chart, terms))

def _coerce_terms(chart, terms):
    if not terms:
        return None
    out = {}
    for key, coeff in terms.items():
        if key and isinstance(key[0], str):
            key = tuple(chart.index(n) for n in key)
        if not isinstance(coeff, RationalFunction):
            coeff = RationalFunction.const(chart, coeff)
        out[tuple(key)] = coeff
    return out

def function_field(chart: ChartSpec, f: RationalFunction) -> Multivector:
    return Multivector(chart, 0, {(): f})

def differential(chart: ChartSpec, f: RationalFunction) -> Form:
    terms = {}
    for u in range(chart.n_geom):
        df = f.partial(u)
        if not df.is_zero():
            terms[(u,)] = df
    return Form(chart, 1, terms)


# ---------------------------------------------------------------------------
# Schouten bracket
# ---------------------------------------------------------------------------

def _bracket_vf(c1: RationalFunction, u: int, c2: RationalFunction, v: int):
    """[c1 b_u, c2 b_v] as a term dict: Lie bracket of vector fields."""
    out: dict[Index, RationalFunction] = {}
    d1 = c1 * c2.partial(u)
    if not d1.is_zero():
        out[(v,)] = d1
    d2 = c2 * c1.partial(v)
    if not d2.is_zero():
        prev = out.get((u,))
        val = (prev - d2) if prev is not None else -d2
        if val.is_zero():
            out.pop((u,), None)
        else:
            out[(u,)] = val
    return out


def _wedge_term_dicts(t1, t2, chart):
    out: dict[Index, RationalFunction] = {}
    for i1, c1 in t1.items():
        for i2, c2 in t2.items():
            merged = merge_indices(i1, i2)
            if merged is None:
                continue
            sign, idx = merged
            c = c1 * c2
            if sign < 0:
                c = -c
            prev = out.get(idx)
            val = prev + c if prev is not None else c
            if val.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = val
    return out


def _add_into(target, source, negate=False):
    for idx, c in source.items():
        if negate:
            c = -c
        prev = target.get(idx)
        val = prev + c if prev is not None else c
        if val.is_zero():
            target.pop(idx, None)
        else:
            target[idx] = val


def _schouten_monomial(c1: RationalFunction, idx1: Index, c2: RationalFunction, idx2: Index, chart: ChartSpec):
    """Bracket of two decomposable monomials, as a term dict of degree p+q-1."""
    p, q = len(idx1), len(idx2)
    one = RationalFunction.const(chart, 1)
    if p == 0 and q == 0:
        return {}
    if p == 1 and q == 0:
        val = c1 * c2.partial(idx1[0])
        return {} if val.is_zero() else {(): val}
    if p == 0 and q == 1:
        val = -(c2 * c1.partial(idx2[0]))
        return {} if val.is_zero() else {(): val}
    if p == 1 and q == 1:
        return _bracket_vf(c1, idx1[0], c2, idx2[0])
    if q >= 2:
        # [A, B1 ^ B2] = [A, B1] ^ B2 + (-1)^(p-1) B1 ^ [A, B2],  B1 a vector field
        head, tail = (idx2[0],), idx2[1:]
        out: dict[Index, RationalFunction] = {}
        part1 = _schouten_monomial(c1, idx1, c2, head, chart)
        _add_into(out, _wedge_term_dicts(part1, {tail: one}, chart))
        part2 = _schouten_monomial(c1, idx1, one, tail, chart)
        _add_into(out, _wedge_term_dicts({head: c2}, part2, chart), negate=(p - 1) % 2 == 1)
        return out
    # p >= 2, q <= 1: swap via graded antisymmetry [A, B] = -(-1)^((p-1)(q-1)) [B, A]
    swapped = _schouten_monomial(c2, idx2, c1, idx1, chart)
    negate = ((p - 1) * (q - 1)) % 2 == 0
    out: dict[Index, RationalFunction] = {}
    _add_into(out, swapped, negate=negate)
    return out


def schouten(x: Multivector, y: Multivector) -> Multivector:
    """Schouten bracket; degree deg(x) + deg(y) - 1 (0 when both are functions)."""
    check_same_chart(x, y)
    degree = max(x.degree + y.degree - 1, 0)
    out: dict[Index, RationalFunction] = {}
    for i1, c1 in x.terms.items():
        for i2, c2 in y.terms.items():
            _add_into(out, _schouten_monomial(c1, i1, c2, i2, x.chart))
    return Multivector(x.chart, degree, out)


# ---------------------------------------------------------------------------
# Poisson calculus
# ---------------------------------------------------------------------------

def _require_bivector(pi: Multivector) -> None:
    if pi.degree != 2:
        raise ValueError(f"expected a bivector, got degree {pi.degree}")


def is_poisson(pi: Multivector) -> bool:
    _require_bivector(pi)
    return schouten(pi, pi).is_zero()


def pi_sharp(pi: Multivector, alpha: Form) -> Multivector:
    """Anchor map pi#(alpha) = pi(alpha, .)."""
    _require_bivector(pi)
    check_same_chart(pi, alpha)
    if alpha.degree != 1:
        raise ValueError(f"expected a one-form, got degree {alpha.degree}")
    out: dict[Index, RationalFunction] = {}
    for (u, v), c in pi.terms.items():
        au = alpha.terms.get((u,))
        if au is not None:
            _add_into(out, {(v,): c * au})
        av = alpha.terms.get((v,))
        if av is not None:
            _add_into(out, {(u,): -(c * av)})
    return Multivector(pi.chart, 1, out)


def hamiltonian_vf(pi: Multivector, f: RationalFunction) -> Multivector:
    _require_bivector(pi)
    return pi_sharp(pi, differential(pi.chart, f))


def poisson_bracket(pi: Multivector, f: RationalFunction, g: RationalFunction) -> RationalFunction:
    """{f, g} = pi(df, dg), expanded directly from the components.

    Independent of :func:`schouten`; used as the oracle for Jacobiator tests.
    """
    _require_bivector(pi)
    acc = RationalFunction.zero(pi.chart)
    for (u, v), c in pi.terms.items():
        acc = acc + c * (f.partial(u) * g.partial(v) - f.partial(v) * g.partial(u))
    return acc


def jacobiator(pi: Multivector, f: RationalFunction, g: RationalFunction, h: RationalFunction) -> RationalFunction:
    """{{f,g},h} + {{g,h},f} + {{h,f},g} via the direct pairing formula."""
    br = lambda a, b: poisson_bracket(pi, a, b)
    return br(br(f, g), h) + br(br(g, h), f) + br(br(h, f), g)


def poisson_differential(pi: Multivector, x: Multivector) -> Multivector:
    """d_pi = [pi, .]; rejects non-Poisson bivectors."""
    if not is_poisson(pi):
        raise ValueError("bivector is not Poisson: [pi, pi] != 0")
    return schouten(pi, x)
