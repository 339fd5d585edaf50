"""Exact sparse multivariate polynomials and rational functions over the rationals.

A polynomial is a map from exponent tuples (one entry per chart variable)
to nonzero ``Fraction`` coefficients; the zero polynomial is the empty map.
All arithmetic is exact.  Rational functions are numerator/denominator
pairs; they are normalized lazily: no multivariate GCD is ever computed,
equality is decided by cross-multiplication, and only cheap reductions are
applied (constant denominators are absorbed, the denominator's leading
coefficient is scaled to one so printing is stable).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .chart import ChartSpec, check_same_chart

Exponent = tuple[int, ...]


class Poly:
    """Sparse polynomial with exact rational coefficients on a chart."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: ChartSpec, terms: Mapping[Exponent, Fraction] | None = None):
        self.chart = chart
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c == 0:
                    continue
                if len(exp) != chart.n_vars:
                    raise ValueError(f"exponent {exp} has wrong length for chart {chart.all_vars}")
                clean[tuple(exp)] = c
        # canonical term order: sorted exponent tuples
        self.terms = {k: clean[k] for k in sorted(clean)}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, chart: ChartSpec) -> "Poly":
        return cls(chart, {})

    @classmethod
    def const(cls, chart: ChartSpec, value) -> "Poly":
        return cls(chart, {(0,) * chart.n_vars: Fraction(value)})

    @classmethod
    def var(cls, chart: ChartSpec, name: str) -> "Poly":
        idx = chart.index(name)
        exp = [0] * chart.n_vars
        exp[idx] = 1
        return cls(chart, {tuple(exp): Fraction(1)})

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def depends_on(self, idx: int) -> bool:
        return any(exp[idx] != 0 for exp in self.terms)

    def degree_in(self, indices: Iterable[int]) -> int:
        """Max total degree over the given variable indices (-1 for zero poly)."""
        idx = tuple(indices)
        if not self.terms:
            return -1
        return max(sum(exp[i] for i in idx) for exp in self.terms)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        check_same_chart(self, other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return Poly(self.chart, out)

    def __neg__(self) -> "Poly":
        return Poly(self.chart, {exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        check_same_chart(self, other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return Poly(self.chart, out)

    def scale(self, value) -> "Poly":
        c = Fraction(value)
        return Poly(self.chart, {exp: c * v for exp, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.chart, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, tuple(self.terms.items())))

    # -- calculus ------------------------------------------------------

    def partial(self, idx: int) -> "Poly":
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            e = exp[idx]
            if e == 0:
                continue
            new = list(exp)
            new[idx] = e - 1
            key = tuple(new)
            s = out.get(key, Fraction(0)) + c * e
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(self.chart, out)

    def substitute(self, assignment: Mapping[int, "Poly"]) -> "Poly":
        """Replace variables (by index) with polynomials on the same chart."""
        result = Poly.zero(self.chart)
        for exp, c in self.terms.items():
            term = Poly.const(self.chart, c)
            for idx, e in enumerate(exp):
                if e == 0:
                    continue
                if idx in assignment:
                    term = term * (assignment[idx] ** e)
                else:
                    mono = [0] * self.chart.n_vars
                    mono[idx] = e
                    term = term * Poly(self.chart, {tuple(mono): Fraction(1)})
            result = result + term
        return result

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        """Evaluate at a full assignment of values (missing indices mean 0)."""
        total = Fraction(0)
        for exp, c in self.terms.items():
            val = c
            for idx, e in enumerate(exp):
                if e == 0:
                    continue
                base = Fraction(point.get(idx, 0))
                val *= base ** e
            total += val
        return total

    # -- display -------------------------------------------------------

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.chart.all_vars
        parts = []
        for exp, c in self.terms.items():
            factors = []
            for idx, e in enumerate(exp):
                if e == 1:
                    factors.append(names[idx])
                elif e > 1:
                    factors.append(f"{names[idx]}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def poly_exact_div(num: Poly, den: Poly) -> Poly:
    """Exact division num/den; raises if den does not divide num.

    Used by the fraction-free elimination, where every intermediate
    division is exact by construction (Bareiss).
    """
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return Poly.zero(num.chart)
    check_same_chart(num, den)
    den_lead = max(den.terms)  # lex-largest monomial
    den_lc = den.terms[den_lead]
    remainder = num
    quotient: dict[Exponent, Fraction] = {}
    while not remainder.is_zero():
        lead = max(remainder.terms)
        diff = tuple(a - b for a, b in zip(lead, den_lead))
        if any(d < 0 for d in diff):
            raise ValueError("inexact polynomial division")
        coeff = remainder.terms[lead] / den_lc
        quotient[diff] = quotient.get(diff, Fraction(0)) + coeff
        remainder = remainder - Poly(num.chart, {diff: coeff}) * den
    return Poly(num.chart, quotient)


class RationalFunction:
    """Quotient of two polynomials, normalized lazily (no GCD reduction)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.chart, 1)
        check_same_chart(num, den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.const(num.chart, 1)
        elif den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num.scale(Fraction(1) / c)
            den = Poly.const(num.chart, 1)
        elif num == den:
            num = Poly.const(num.chart, 1)
            den = Poly.const(num.chart, 1)
        else:
            # scale so the denominator's lex-leading coefficient is 1
            lc = den.terms[max(den.terms)]
            if lc != 1:
                inv = Fraction(1) / lc
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @property
    def chart(self) -> ChartSpec:
        return self.num.chart

    @classmethod
    def zero(cls, chart: ChartSpec) -> "RationalFunction":
        return cls(Poly.zero(chart))

    @classmethod
    def const(cls, chart: ChartSpec, value) -> "RationalFunction":
        return cls(Poly.const(chart, value))

    @classmethod
    def var(cls, chart: ChartSpec, name: str) -> "RationalFunction":
        return cls(Poly.var(chart, name))

    @classmethod
    def from_poly(cls, p: Poly) -> "RationalFunction":
        return cls(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        check_same_chart(self, other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        check_same_chart(self, other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        check_same_chart(self, other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def scale(self, value) -> "RationalFunction":
        return RationalFunction(self.num.scale(value), self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # cross-multiplication: exact, no GCD needed
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable (lazy normal form)")

    # -- calculus ------------------------------------------------------

    def partial(self, idx: int) -> "RationalFunction":
        if self.is_polynomial():
            return RationalFunction(self.num.partial(idx))
        n, d = self.num, self.den
        return RationalFunction(n.partial(idx) * d - n * d.partial(idx), d * d)

    def partial_name(self, name: str) -> "RationalFunction":
        return self.partial(self.chart.index(name))

    def substitute(self, assignment: Mapping[int, Poly]) -> "RationalFunction":
        num = self.num.substitute(assignment)
        den = self.den.substitute(assignment)
        if den.is_zero():
            raise ZeroDivisionError("substitution makes the denominator vanish identically")
        return RationalFunction(num, den)

    def substitute_fiber(self, sections: Mapping[int, Poly]) -> "RationalFunction":
        """Replace fiber variables by base-only polynomials (one per fiber index)."""
        chart = self.chart
        assignment: dict[int, Poly] = {}
        for a in range(chart.n_fiber):
            s = sections[a]
            check_same_chart(self.num, s)
            for exp in s.terms:
                for idx, e in enumerate(exp):
                    if e and chart.is_fiber(idx):
                        raise ValueError(
                            f"substitution polynomial for {chart.fiber_vars[a]!r} "
                            f"mentions fiber variable {chart.name(idx)!r}"
                        )
            assignment[chart.n_base + a] = s
        return self.substitute(assignment)

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / d

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"


def rf_op(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Four-function arithmetic entry point ('add', 'sub', 'mul', 'div')."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
