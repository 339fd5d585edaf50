"""Recursive-descent parser and printer for chart expressions.

Grammar (no general division; rationals appear only as literals):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' nonneg-int)?
    atom     := rational | ident | '(' expr ')' | '-' atom
    rational := int ('/' int)?

Identifiers must be chart variables.  The printer emits a form the parser
accepts again (negative coefficients are printed as explicit '-c*mono'
factors so that '^' never binds a bare leading minus).
"""

from __future__ import annotations

from fractions import Fraction

from .chart import ChartSpec
from .poly import Poly, RationalFunction


class ExpressionError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str, chart: ChartSpec):
        self.text = text
        self.chart = chart
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ExpressionError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def parse(self) -> Poly:
        result = self.parse_expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise ExpressionError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return result

    def parse_expr(self) -> Poly:
        acc = self.parse_term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                acc = acc + self.parse_term()
            elif ch == "-":
                self.pos += 1
                acc = acc - self.parse_term()
            else:
                return acc

    def parse_term(self) -> Poly:
        acc = self.parse_factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> Poly:
        atom = self.parse_atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            start = self.pos
            digits = self._read_digits()
            if digits is None:
                raise ExpressionError("expected a nonnegative integer exponent", start)
            return atom ** int(digits)
        return atom

    def parse_atom(self) -> Poly:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.parse_atom()
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if ch.isdigit():
            return self.parse_rational()
        if ch.isalpha() or ch == "_":
            start = self.pos
            name = self._read_ident()
            try:
                return Poly.var(self.chart, name)
            except ValueError:
                raise ExpressionError(f"unknown identifier {name!r}", start) from None
        if ch == "":
            raise ExpressionError("unexpected end of input", self.pos)
        raise ExpressionError(f"unexpected {ch!r}", self.pos)

    def parse_rational(self) -> Poly:
        start = self.pos
        numerator = self._read_digits()
        if numerator is None:
            raise ExpressionError("expected an integer", start)
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            dstart = self.pos
            denominator = self._read_digits()
            if denominator is None:
                raise ExpressionError("expected a denominator", dstart)
            if int(denominator) == 0:
                raise ExpressionError("zero denominator literal", dstart)
            return Poly.const(self.chart, Fraction(int(numerator), int(denominator)))
        return Poly.const(self.chart, int(numerator))

    def _read_digits(self) -> str | None:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start : self.pos] if self.pos > start else None

    def _read_ident(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start : self.pos]


def parse_expression(text: str, chart: ChartSpec) -> RationalFunction:
    """Parse an expression string into a (polynomial) rational function."""
    return RationalFunction(_Parser(text, chart).parse())


def poly_expression(p: Poly) -> str:
    """Printer whose output re-parses to an equal polynomial."""
    if p.is_zero():
        return "0"
    names = p.chart.all_vars
    parts = []
    for exp, coeff in p.terms.items():
        factors = []
        for idx, e in enumerate(exp):
            if e == 1:
                factors.append(names[idx])
            elif e > 1:
                factors.append(f"{names[idx]}^{e}")
        if not factors:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{coeff}*" + "*".join(factors))
    return " + ".join(parts)


def rf_expression(rf: RationalFunction) -> str:
    """Exact rendering; polynomial output re-parses, quotients are displayed
    as (num)/(den) for reports only."""
    if rf.is_polynomial():
        return poly_expression(rf.num)
    return f"({poly_expression(rf.num)})/({poly_expression(rf.den)})"
