"""Recursive-descent parser for rational-function expressions.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := '-' factor | base ('^' ['-'] int)?
    base     := int | name | '(' expr ')'

A rational such as ``3/4`` is just integer division, evaluated exactly.
Unary minus and negative exponents are accepted as well.  ``name`` is looked up in a
binding table: ``t`` for field constants, ``t`` and ``x`` for polynomials in
the spectral variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .field import T, DivisionByZero, FieldElem
from .polyx import PolyX

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


@dataclass
class _Tok:
    kind: str  # 'int', 'name', 'op', 'end'
    value: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: dict, divide):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.names = names
        self.divide = divide

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.pos, self.text)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.value == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            raise self.error(f"expected {op!r}")

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected token {self.tok.value!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            if self.accept("*"):
                value = value * self.factor()
            elif self.tok.kind == "op" and self.tok.value == "/":
                tok = self.tok
                self.i += 1
                value = self.divide(value, self.factor(), tok, self)
            else:
                return value

    def factor(self):
        if self.accept("-"):
            return -self.factor()
        value = self.base()
        if self.accept("^"):
            negative = self.accept("-")
            tok = self.tok
            if tok.kind != "int":
                raise self.error("expected integer exponent")
            self.i += 1
            n = int(tok.value)
            if negative:
                value = self.divide(value ** 0, value ** n, tok, self)
            else:
                value = value ** n
        return value

    def base(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return FieldElem.const(int(tok.value))
        if tok.kind == "name":
            if tok.value not in self.names:
                raise self.error(f"unknown name {tok.value!r}")
            self.i += 1
            return self.names[tok.value]
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {tok.value!r}")


def _field_divide(a: FieldElem, b: FieldElem, tok: _Tok, parser: _Parser) -> FieldElem:
    if b.is_zero():
        raise DivisionByZero(f"division by zero at position {tok.pos}")
    return a / b


def _polyx_divide(a, b, tok: _Tok, parser: _Parser):
    a, b = PolyX.lift(a), PolyX.lift(b)
    if b.degree() > 0:
        raise ParseError("division by a non-constant polynomial in x", tok.pos, parser.text)
    c = b.coefficient(0)
    if c.is_zero():
        raise DivisionByZero(f"division by zero at position {tok.pos}")
    return a.scale(c.inverse())


def parse_field_expr(text: str) -> FieldElem:
    """Parse an exact element of Q(t), e.g. ``(1+t)/(2*t^3)``."""
    return _Parser(text, {"t": T}, _field_divide).parse()


def parse_poly_expr(text: str) -> PolyX:
    """Parse a polynomial in ``x`` whose coefficients lie in Q(t)."""
    return PolyX.lift(_Parser(text, {"t": T, "x": PolyX.x()}, _polyx_divide).parse())
