"""Recursive-descent parser for the polynomial expression language.

    poly   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := coeff | var ('^' nat)?
    coeff  := int ('/' posnat)?

Whitespace is ignored.  Multiplication is always written out; ``2u`` and
``u^(2)`` are syntax errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exactpoly import Polynomial

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^])|(?P<bad>\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        self.message = message
        self.offset = offset
        before = text[:offset]
        self.line = before.count("\n") + 1
        self.column = offset - (before.rfind("\n") + 1) + 1
        super().__init__(f"line {self.line}, column {self.column}: {message}")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", text, start)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, varnames: Sequence[str]):
        self.text = text
        self.varnames = tuple(varnames)
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(message, self.text, tok.pos)

    def take(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def is_op(self, op: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == op

    def poly(self) -> Polynomial:
        sign = 1
        if self.is_op("-"):
            self.take()
            sign = -1
        result = self.term() * sign
        while self.is_op("+") or self.is_op("-"):
            op = self.take().text
            t = self.term()
            result = result + t if op == "+" else result - t
        if self.tok.kind != "end":
            self.error(f"expected '+', '-', '*' or end of input, found {self.tok.text!r}")
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.is_op("*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        t = self.tok
        if t.kind == "int":
            self.take()
            num = int(t.text)
            if self.is_op("/"):
                self.take()
                d = self.tok
                if d.kind != "int":
                    self.error("expected a positive integer denominator")
                self.take()
                if int(d.text) == 0:
                    self.error("zero denominator", d)
                return Polynomial.constant(self.varnames, Fraction(num, int(d.text)))
            return Polynomial.constant(self.varnames, num)
        if t.kind == "name":
            self.take()
            if t.text not in self.varnames:
                self.error(f"unknown variable {t.text!r}", t)
            var = Polynomial.variable(self.varnames, t.text)
            if self.is_op("^"):
                self.take()
                e = self.tok
                if e.kind != "int":
                    self.error("expected a non-negative integer exponent")
                self.take()
                return var ** int(e.text)
            return var
        if t.kind == "end":
            self.error("unexpected end of input")
        self.error(f"expected a coefficient or variable, found {t.text!r}")


def parse_expression(text: str, varnames: Sequence[str]) -> Polynomial:
    return _Parser(text, varnames).poly()


_RATIONAL = re.compile(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?")


def parse_rational(text) -> Fraction:
    """A rational literal ``[-]int[/posnat]``; plain ints pass through."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    text = str(text)
    m = _RATIONAL.fullmatch(text)
    if m is None:
        raise ParseError(f"expected a rational of the form p or p/q, got {text!r}", text, 0)
    if m.group(2) is not None and int(m.group(2)) == 0:
        raise ParseError("zero denominator", text, m.start(2))
    return Fraction(int(m.group(1)), int(m.group(2) or 1))
