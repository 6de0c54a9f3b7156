"""Recursive-descent parser for series expressions.

Grammar (standard precedence, left associative):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('+' | '-') factor | power
    power   := atom ('^' int_exponent)?
    atom    := number | 't' ('^' '(' scalar ')')? | '(' expr ')'
             | name '(' expr (';' expr)? ')'

Numbers are decimal or rational literals; a '~' prefix forces the float
backend.  Division truncates at the context's default order, so any
expression containing '/' (except by an exact monomial) carries a finite
truncation order.  All errors are ParseError with a byte offset.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from gmpy2 import mpq

from .errors import ParseError
from .hahn import (
    HahnSeries,
    hs_add,
    hs_const,
    hs_div,
    hs_monomial,
    hs_mul,
    hs_neg,
    hs_one,
    hs_pow_int,
    hs_sub,
    hs_t,
)
from .scalar import NumericContext, Scalar, is_exact
from .tempered import exp_series, log_series, tempered_power
from .valuation import ac, leading, lg, pi, vv

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<number>~?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
      | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<op>[-+*/^();])
    )""",
    re.VERBOSE,
)

_FUNCTIONS = ("exp", "log", "pi", "lg", "vv", "ac", "tpow")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise ParseError(f"unexpected character {rest[0]!r}", at)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, ctx: NumericContext, text: str, float_mode: bool):
        self.ctx = ctx
        self.text = text
        self.float_mode = float_mode
        self.tokens = _tokenize(text)
        self.i = 0

    # -- token helpers ------------------------------------------------------

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", len(self.text))
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {value!r}, got end of expression", len(self.text))
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r}", tok[2])
        self.i += 1

    def offset(self) -> int:
        tok = self.peek()
        return tok[2] if tok is not None else len(self.text)

    # -- scalar literals ----------------------------------------------------

    def _number_scalar(self, text: str, at: int) -> Scalar:
        floaty = text.startswith("~")
        body = text[1:] if floaty else text
        if floaty or self.float_mode:
            return self.ctx.float_(body)
        try:
            return mpq(Fraction(body))  # decimal literals are exact rationals
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad number literal {text!r}", at) from None

    def parse_signed_scalar(self) -> Scalar:
        """A scalar literal with optional sign and optional '/' denominator,
        used only inside t^( ... )."""
        sign = 1
        tok = self.peek()
        while tok is not None and tok[1] in ("+", "-"):
            if tok[1] == "-":
                sign = -sign
            self.next()
            tok = self.peek()
        kind, value, at = self.next()
        if kind != "number":
            raise ParseError(f"expected a scalar, got {value!r}", at)
        num = self._number_scalar(value, at)
        tok = self.peek()
        if tok is not None and tok[1] == "/":
            self.next()
            kind, value, at = self.next()
            if kind != "number":
                raise ParseError(f"expected a denominator, got {value!r}", at)
            den = self._number_scalar(value, at)
            if den == 0:
                raise ParseError("zero denominator in exponent", at)
            if is_exact(num) and is_exact(den):
                num = num / den
            else:
                num = self.ctx.gctx.div(self.ctx.promote(num), self.ctx.promote(den))
        return num if sign > 0 else -num if is_exact(num) else self.ctx.gctx.minus(num)

    # -- grammar ------------------------------------------------------------

    def parse_expr(self) -> HahnSeries:
        out = self.parse_term()
        while True:
            tok = self.peek()
            if tok is None or tok[1] not in ("+", "-"):
                return out
            self.next()
            rhs = self.parse_term()
            out = hs_add(self.ctx, out, rhs) if tok[1] == "+" else hs_sub(self.ctx, out, rhs)

    def parse_term(self) -> HahnSeries:
        out = self.parse_factor()
        while True:
            tok = self.peek()
            if tok is None or tok[1] not in ("*", "/"):
                return out
            self.next()
            rhs = self.parse_factor()
            if tok[1] == "*":
                out = hs_mul(self.ctx, out, rhs)
            else:
                out = hs_div(self.ctx, out, rhs, self.ctx.trunc)

    def parse_factor(self) -> HahnSeries:
        tok = self.peek()
        if tok is not None and tok[1] in ("+", "-"):
            self.next()
            inner = self.parse_factor()
            return inner if tok[1] == "+" else hs_neg(self.ctx, inner)
        return self.parse_power()

    def parse_power(self) -> HahnSeries:
        base = self.parse_atom()
        tok = self.peek()
        if tok is None or tok[1] != "^":
            return base
        self.next()
        n = self._parse_int_exponent()
        return hs_pow_int(self.ctx, base, n, self.ctx.trunc if n < 0 else None)

    def _parse_int_exponent(self) -> int:
        parens = False
        tok = self.peek()
        if tok is not None and tok[1] == "(":
            parens = True
            self.next()
        sign = 1
        tok = self.peek()
        if tok is not None and tok[1] == "-":
            sign = -1
            self.next()
        kind, value, at = self.next()
        if kind != "number" or not value.isdigit():
            raise ParseError(f"expected an integer exponent, got {value!r}", at)
        if parens:
            self.expect(")")
        return sign * int(value)

    def parse_atom(self) -> HahnSeries:
        kind, value, at = self.next()
        if kind == "number":
            return hs_const(self.ctx, self._number_scalar(value, at))
        if kind == "op" and value == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if kind == "name":
            if value == "t":
                return self._parse_t()
            if value in _FUNCTIONS:
                return self._parse_function(value, at)
            raise ParseError(f"unknown name {value!r}", at)
        raise ParseError(f"unexpected token {value!r}", at)

    def _parse_t(self) -> HahnSeries:
        tok = self.peek()
        if tok is None or tok[1] != "^":
            return hs_t(self.ctx)
        # t^(q) with a scalar exponent demands the parenthesized form
        save = self.i
        self.next()
        tok = self.peek()
        if tok is None or tok[1] != "(":
            self.i = save  # fall back to power-of-series: t^3
            return hs_t(self.ctx)
        self.next()
        q = self.parse_signed_scalar()
        self.expect(")")
        return hs_monomial(self.ctx, q, mpq(1))

    def _parse_function(self, name: str, at: int) -> HahnSeries:
        self.expect("(")
        arg = self.parse_expr()
        second: Optional[HahnSeries] = None
        tok = self.peek()
        if tok is not None and tok[1] == ";":
            self.next()
            second = self.parse_expr()
        self.expect(")")
        if name == "tpow":
            if second is None:
                raise ParseError("tpow takes two arguments: tpow(a; gamma)", at)
            gam = _as_scalar(second, at)
            return tempered_power(self.ctx, arg, gam, self.ctx.trunc)
        if second is not None:
            raise ParseError(f"{name} takes one argument", at)
        if name == "exp":
            return exp_series(self.ctx, arg, self.ctx.trunc)
        if name == "log":
            return log_series(self.ctx, arg, self.ctx.trunc)
        if name == "lg":
            return lg(self.ctx, arg)
        if name == "ac":
            return hs_const(self.ctx, ac(self.ctx, arg))
        if name == "vv":
            # the signed valuation rendered back as a series: the monomial
            # pi(vv(a)) on the diagonal
            return pi(self.ctx, vv(self.ctx, arg))
        if name == "pi":
            r = leading(arg)
            if not r.is_zero and len(arg.terms) == 1 and (r.q == 0):
                return pi(self.ctx, r.c)  # constant: the scalar cross-section
            return pi(self.ctx, vv(self.ctx, arg))
        raise ParseError(f"unknown function {name!r}", at)


def _as_scalar(s: HahnSeries, at: int) -> Scalar:
    if not s.terms:
        if s.order is None:
            return mpq(0)
        raise ParseError("exponent argument is indistinguishable from zero", at)
    if len(s.terms) != 1 or not s.terms[0][0] == 0:
        raise ParseError("exponent argument must be a constant", at)
    return s.terms[0][1]


def parse_series_expr(ctx: NumericContext, text: str, float_mode: bool = False) -> HahnSeries:
    """Parse and evaluate a series expression against a numeric context."""
    p = _Parser(ctx, text, float_mode)
    if p.peek() is None:
        raise ParseError("empty expression", 0)
    out = p.parse_expr()
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return out
