"""Expression parser for exact polynomials.

Grammar: integers, rationals p/q, identifiers, + - * ^ and parentheses.
Implicit multiplication is not allowed; ^ binds tighter than * which
binds tighter than + and -; unary minus is allowed.  Division is only
defined between numeric constants (rational literals like 1/2).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, PolyError
from .mpoly import MPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == m.start():
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(src) - len(stripped)
            raise ParseError(f"unexpected character {src[bad_at]!r}", bad_at)
        if m.group(1):
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, src: str, variables: tuple[str, ...]):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", len(self.src))
        self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", tok[2])

    # expr := term (('+'|'-') term)*
    def expr(self) -> MPoly:
        node = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                node = node + rhs if tok[1] == "+" else node - rhs
            else:
                return node

    # term := factor (('*'|'/') factor)*
    def term(self) -> MPoly:
        node = self.factor()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.factor()
                if tok[1] == "*":
                    node = node * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        raise ParseError("division is only defined for nonzero rational constants", tok[2])
                    node = node * (Fraction(1) / rhs.constant_term())
            else:
                return node

    # factor := '-' factor | power
    def factor(self) -> MPoly:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        if tok and tok[0] == "op" and tok[1] == "+":
            self.take()
            return self.factor()
        return self.power()

    # power := atom ('^' nat)?
    def power(self) -> MPoly:
        node = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            etok = self.take()
            if etok[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", etok[2])
            node = node ** int(etok[1])
        return node

    def atom(self) -> MPoly:
        tok = self.take()
        if tok[0] == "num":
            return MPoly.const(self.variables, int(tok[1]))
        if tok[0] == "name":
            if tok[1] not in self.variables:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            return MPoly.var(self.variables, tok[1])
        if tok[0] == "op" and tok[1] == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])

    def run(self) -> MPoly:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return node


def parse_poly(src: str, variables, params=()) -> MPoly:
    """Parse an expression over the given variables and parameters."""
    variables = tuple(variables) + tuple(p for p in params if p not in variables)
    if len(set(variables)) != len(variables):
        raise PolyError("parameters clash with geometric variables")
    return _Parser(src, variables).run()


def poly_to_string(p: MPoly) -> str:
    """Printable form that parses back to an equal polynomial."""
    return str(p)
