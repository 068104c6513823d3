"""Tokenizer and recursive-descent evaluator for the text syntaxes.

One grammar covers scalars (``-3/2i``, ``1+2i``), parameter polynomials
(``t1*theta2 - 2*theta1*theta3``) and cochains
(``phi[101]_1 + (-1)*phi[011]_2``, ``t1*phi[011]_2``).  The evaluator is
generic over the value types: callers supply how to build a constant, a
named parameter and an elementary map, and the values themselves implement
``+``, ``-`` and ``*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<map>phi\[(?P<src>[^\]]*)\]_(?P<tgt>\d+))
  | (?P<num>\d+(?:/\d+)?)(?P<imag>i(?![A-Za-z0-9_]))?
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int
    extra: tuple = ()


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            line, col = _line_col(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line=line, column=col)
        kind = m.lastgroup
        if m.group("ws") is not None:
            pass
        elif m.group("map") is not None:
            out.append(Token("map", m.group(0), pos, (m.group("src"), int(m.group("tgt")))))
        elif m.group("num") is not None:
            kind = "imag" if m.group("imag") else "num"
            out.append(Token(kind, m.group("num"), pos))
        elif m.group("name") is not None:
            name = m.group("name")
            out.append(Token("imag" if name == "i" else "name", "1" if name == "i" else name, pos))
        else:
            out.append(Token("op", m.group("op"), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class Evaluator:
    """Evaluate an expression.

    ``constant(re, im)`` builds a scalar value, ``variable(name)`` a
    parameter, ``elementary(src, tgt)`` an elementary map (or ``None`` when
    maps are not allowed in this context).
    """

    def __init__(
        self,
        text: str,
        constant: Callable[[Fraction, Fraction], Any],
        variable: Callable[[str], Any],
        elementary: Callable[[str, int], Any] | None = None,
    ):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.constant = constant
        self.variable = variable
        self.elementary = elementary

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tokens[self.i]
        line, col = _line_col(self.text, tok.pos)
        return ParseError(msg, line=line, column=col)

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def eat(self, kind: str, text: str | None = None) -> Token | None:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.i += 1
            return t
        return None

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected token {self.tok.text!r}")
        return value

    def expr(self):
        if self.eat("op", "-"):
            value = -self.term()
        else:
            self.eat("op", "+")
            value = self.term()
        while True:
            if self.eat("op", "+"):
                value = self._combine(value, self.term(), "+")
            elif self.eat("op", "-"):
                value = self._combine(value, self.term(), "-")
            else:
                return value

    def _combine(self, a, b, op):
        try:
            return a + b if op == "+" else a - b
        except (TypeError, ValueError) as exc:
            raise self.error(f"cannot combine terms: {exc}") from None

    def term(self):
        value = self.factor()
        while self.eat("op", "*"):
            tok = self.tok
            rhs = self.factor()
            try:
                value = value * rhs
            except (TypeError, ValueError) as exc:
                raise self.error(f"invalid product: {exc}", tok) from None
        return value

    def factor(self):
        if self.eat("op", "-"):
            return -self.factor()
        base = self.atom()
        if self.eat("op", "^"):
            tok = self.eat("num")
            if tok is None or "/" in tok.text:
                raise self.error("exponent must be a nonnegative integer")
            result = self.constant(Fraction(1), Fraction(0))
            for _ in range(int(tok.text)):
                result = result * base
            return result
        return base

    def atom(self):
        t = self.tok
        if self.eat("num"):
            return self.constant(Fraction(t.text), Fraction(0))
        if self.eat("imag"):
            return self.constant(Fraction(0), Fraction(t.text))
        if self.eat("name"):
            try:
                return self.variable(t.text)
            except KeyError:
                raise self.error(f"unknown parameter {t.text!r}", t) from None
        if self.eat("map"):
            if self.elementary is None:
                raise self.error("elementary maps are not allowed here", t)
            try:
                return self.elementary(*t.extra)
            except ValueError as exc:
                raise self.error(str(exc), t) from None
        if self.eat("op", "("):
            value = self.expr()
            if not self.eat("op", ")"):
                raise self.error("expected ')'")
            return value
        raise self.error(f"unexpected token {t.text!r}" if t.text else "unexpected end of input")
