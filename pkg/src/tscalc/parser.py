"""Expression grammar and parser.

Precedence, loosest to tightest:  + -  |  * /  |  unary -  |  ^  |  atoms.
Power exponents are rational literals, optionally parenthesized and signed:
x^2, x^-1, x^(1/2), x^(-3/2).  Functions: exp, log, derive, up, down, iota
(one series argument), lambda(n), omega(n), l(n); e^(...) is exp, l0/l1/l2...
name the iterated logs, x the variable.  Differential-polynomial literals use
Y, Y', Y'', ... with series coefficients, e.g.  x*Y' + Y  or  Y''^2 - l1*Y.

Whitespace is insignificant.  Errors carry the byte offset and the expected
token set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import ParseError

# --- abstract syntax ---------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class VarX:
    pass


@dataclass(frozen=True)
class LogAtom:
    depth: int


@dataclass(frozen=True)
class LambdaAtom:
    index: int


@dataclass(frozen=True)
class OmegaAtom:
    index: int


@dataclass(frozen=True)
class YAtom:
    order: int


@dataclass(frozen=True)
class Unary:
    op: str  # neg | exp | log | derive | up | down | iota
    arg: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # add | sub | mul | div
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: Fraction


Expr = Union[Num, VarX, LogAtom, LambdaAtom, OmegaAtom, YAtom, Unary, Binary, Power]

_FUNCTIONS = ("exp", "log", "derive", "up", "down", "iota")


# --- scanner -----------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # int | name | op | prime | end
    text: str
    pos: int


def _scan(text: str) -> list[_Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("int", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(_Token("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            out.append(_Token("op", ch, i))
            i += 1
        elif ch == "'":
            out.append(_Token("prime", ch, i))
            i += 1
        else:
            raise ParseError(i, ("a number", "a name", "an operator"), ch)
    out.append(_Token("end", "", n))
    return out


# --- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _scan(text)
        self.pos = 0

    @property
    def here(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol: str) -> _Token:
        tok = self.here
        if tok.kind != "op" or tok.text != symbol:
            raise ParseError(tok.pos, (repr(symbol),), tok.text)
        return self.take()

    def expect_int(self) -> int:
        tok = self.here
        if tok.kind != "int":
            raise ParseError(tok.pos, ("an integer",), tok.text)
        self.take()
        return int(tok.text)

    # expr := term (('+'|'-') term)*
    def expression(self) -> Expr:
        node = self.term()
        while self.here.kind == "op" and self.here.text in "+-":
            op = self.take().text
            rhs = self.term()
            node = Binary("add" if op == "+" else "sub", node, rhs)
        return node

    # term := factor (('*'|'/') factor)*
    def term(self) -> Expr:
        node = self.factor()
        while self.here.kind == "op" and self.here.text in "*/":
            op = self.take().text
            rhs = self.factor()
            node = Binary("mul" if op == "*" else "div", node, rhs)
        return node

    # factor := '-' factor | power
    def factor(self) -> Expr:
        if self.here.kind == "op" and self.here.text == "-":
            self.take()
            return Unary("neg", self.factor())
        return self.power()

    # power := atom ('^' exponent)?
    def power(self) -> Expr:
        node = self.atom()
        if self.here.kind == "op" and self.here.text == "^":
            self.take()
            return Power(node, self.exponent())
        return node

    # exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
    # A bare p/q exponent would be ambiguous with division, so fractional
    # exponents must be parenthesized: x^2, x^-1, x^(1/2), x^(-3/2).
    def exponent(self) -> Fraction:
        if self.here.kind == "op" and self.here.text == "(":
            self.take()
            value = self._signed_rational(allow_fraction=True)
            self.expect_op(")")
            return value
        return self._signed_rational(allow_fraction=False)

    def _signed_rational(self, allow_fraction: bool) -> Fraction:
        sign = 1
        if self.here.kind == "op" and self.here.text == "-":
            self.take()
            sign = -1
        num = self.expect_int()
        den = 1
        if allow_fraction and self.here.kind == "op" and self.here.text == "/":
            self.take()
            den = self.expect_int()
            if den == 0:
                raise ParseError(self.tokens[self.pos - 1].pos, ("a nonzero denominator",), "0")
        return Fraction(sign * num, den)

    def _paren_expr(self) -> Expr:
        self.expect_op("(")
        node = self.expression()
        self.expect_op(")")
        return node

    def _indexed(self) -> int:
        self.expect_op("(")
        n = self.expect_int()
        self.expect_op(")")
        return n

    def atom(self) -> Expr:
        tok = self.here
        if tok.kind == "int":
            self.take()
            return Num(Fraction(int(tok.text)))
        if tok.kind == "op" and tok.text == "(":
            return self._paren_expr()
        if tok.kind == "name":
            self.take()
            name = tok.text
            if name == "x":
                return VarX()
            if name == "e":
                self.expect_op("^")
                return Unary("exp", self._paren_expr())
            if name == "Y":
                order = 0
                while self.here.kind == "prime":
                    self.take()
                    order += 1
                return YAtom(order)
            if name in _FUNCTIONS:
                return Unary(name, self._paren_expr())
            if name == "lambda":
                return LambdaAtom(self._indexed())
            if name == "omega":
                return OmegaAtom(self._indexed())
            if name == "l":
                return LogAtom(self._indexed())
            if name.startswith("l") and name[1:].isdigit():
                return LogAtom(int(name[1:]))
            raise ParseError(tok.pos, ("x", "e", "l<n>", "Y", *_FUNCTIONS, "lambda", "omega"), name)
        raise ParseError(tok.pos, ("a number", "a name", "'('", "'-'"), tok.text)


def parse_prefix(text: str) -> tuple[Expr, int]:
    """Parse a leading expression, returning it and the character offset of
    the first unconsumed token."""
    p = _Parser(text)
    node = p.expression()
    return node, p.here.pos


def parse(text: str) -> Expr:
    """Parse a complete expression; trailing input is an error."""
    p = _Parser(text)
    node = p.expression()
    if p.here.kind != "end":
        raise ParseError(p.here.pos, ("end of input",), p.here.text)
    return node


def contains_y(expr: Expr) -> bool:
    if isinstance(expr, YAtom):
        return True
    if isinstance(expr, Unary):
        return contains_y(expr.arg)
    if isinstance(expr, Binary):
        return contains_y(expr.left) or contains_y(expr.right)
    if isinstance(expr, Power):
        return contains_y(expr.base)
    return False
