"""Polynomial expression grammar: parser and canonical printer.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := rational | var | '(' expr ')' | '-' factor

Rationals are integer literals or ``a/b``; products need an explicit ``*``.
The printer lists terms in graded lexicographic order (x > y > z > s > t),
so ``y^2 - 2*x*z`` prints as ``-2*x*z + y^2``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..algebra.poly import Poly, RatFunc
from ..algebra.scalar import TowerElem

DEFAULT_VARIABLES = ("x", "y", "z", "s", "t")

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_α-ω][A-Za-z_0-9α-ω]*)|(?P<op>[-+*^()/.,]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, variables):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.base()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if val == "-":
                raise ParseError("negative exponent", pos)
            if val == "(" or (kind == "num" and "/" in val):
                raise ParseError("non-integer exponent", pos)
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer literal, found {val!r}", pos)
            if self.peek()[1] == ".":
                raise ParseError("non-integer exponent", self.peek()[2])
            base = base ** int(val)
        return base

    def base(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "num":
            if self.peek()[1] == ".":
                raise ParseError("decimal literals are not exact; write a/b", self.peek()[2])
            if "/" in val:
                a, b = (int(x) for x in val.split("/"))
                if b == 0:
                    raise ParseError("zero denominator", pos)
                return Poly.const(Fraction(a, b))
            return Poly.const(int(val))
        if kind == "name":
            if val not in self.variables:
                raise ParseError(f"unknown variable {val!r}", pos)
            if self.peek()[0] in ("name", "num") or self.peek()[1] == "(":
                raise ParseError("implicit multiplication; write an explicit '*'", self.peek()[2])
            return Poly.var(val)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if val == "-":
            return -self.factor()
        if val == "+":
            return self.factor()
        if val == "/":
            raise ParseError("division is only allowed inside rational literals", pos)
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_poly(text: str, variables=DEFAULT_VARIABLES) -> Poly:
    """Parse an expression in the documented grammar into an exact polynomial."""
    return _Parser(text, variables).parse()


def parse_poly_list(text: str, count: int | None = None, variables=DEFAULT_VARIABLES) -> list[Poly]:
    parts = [p for p in text.split(",")]
    if count is not None and len(parts) != count:
        raise ValueError(f"expected {count} comma-separated expressions, got {len(parts)}")
    return [parse_poly(p, variables) for p in parts]


def _coeff_text(c) -> str:
    if isinstance(c, TowerElem):
        return str(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial_text(vars, exps) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: graded-lex order, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for exps, c in p.sorted_terms():
        mono = _monomial_text(p.vars, exps)
        neg = not isinstance(c, TowerElem) and c < 0
        mag = -c if neg else c
        if not mono:
            body = _coeff_text(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coeff_text(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_ratfunc(r: RatFunc) -> str:
    if r.den == 1:
        return format_poly(r.num)
    return f"({format_poly(r.num)})/({format_poly(r.den)})"
