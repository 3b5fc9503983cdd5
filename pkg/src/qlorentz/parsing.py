"""Expression grammar for the command-line surface.

Grammar (explicit ``*``; juxtaposition is not multiplication)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := atom ['^' signed-int]
    atom    := rational | 'i' | q-atom | identifier | '(' expr ')'
    q-atom  := 'q' ['^' (signed-int | '(' signed-int '/' '2' ')')]
    rational:= integer ['/' integer]

Identifiers name algebra generators and are resolved against a chosen
:class:`~qlorentz.algebra.AlgebraSpec` when the tree is lowered to a
normal-ordered polynomial.  Parsing is independent of the spec; lowering
reports unknown generators with their source position.

``parse`` produces a small AST whose nodes carry (offset, line, column)
spans, ``lower`` turns an AST into an :class:`~qlorentz.algebra.NCPoly`,
and ``print_canonical`` renders a polynomial back into the grammar so that
``lower(parse(print_canonical(p)), p.spec) == p``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import NCPoly, UnknownGeneratorError
from .render import poly_to_text
from .scalars import LaurentScalar


class ExprError(ValueError):
    """Syntax or lowering error with a 1-based line/column position."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Span:
    offset: int
    line: int
    column: int


@dataclass(frozen=True)
class Token:
    kind: str          # NUMBER IDENT OP END
    text: str
    span: Span


_IDENT_START = set(string.ascii_letters + "_")
_IDENT_CONT = _IDENT_START | set(string.digits)
_OPS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        span = Span(i, line, col)
        if ch in _OPS:
            tokens.append(Token("OP", ch, span))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("NUMBER", text[i:j], span))
            col += j - i
            i = j
            continue
        if ch in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(Token("IDENT", text[i:j], span))
            col += j - i
            i = j
            continue
        raise ExprError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("END", "", Span(n, line, col)))
    return tokens


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Node:
    span: Span


@dataclass(frozen=True)
class Rational(Node):
    value: Fraction


@dataclass(frozen=True)
class Imag(Node):
    pass


@dataclass(frozen=True)
class QPower(Node):
    """q raised to a half-integer power; ``s_exp`` counts powers of q^(1/2)."""

    s_exp: int


@dataclass(frozen=True)
class GenRef(Node):
    name: str


@dataclass(frozen=True)
class Power(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Product(Node):
    factors: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class Sum(Node):
    # signs[k] is +1 or -1 for terms[k]; signs[0] covers a leading minus.
    terms: tuple = field(default_factory=tuple)
    signs: tuple = field(default_factory=tuple)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self):
        return self.tokens[self.pos]

    def _fail(self, message, token=None):
        tok = token or self.cur
        raise ExprError(message, tok.span.line, tok.span.column)

    def _eat_op(self, op):
        tok = self.cur
        if tok.kind != "OP" or tok.text != op:
            what = repr(tok.text) if tok.kind != "END" else "end of input"
            self._fail(f"expected {op!r}, found {what}")
        self.pos += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.cur.kind != "END":
            self._fail(f"unexpected {self.cur.text!r} after expression")
        return node

    def expr(self):
        start = self.cur
        signs = []
        terms = []
        if self.cur.kind == "OP" and self.cur.text == "-":
            self.pos += 1
            signs.append(-1)
        else:
            signs.append(1)
        terms.append(self.term())
        while self.cur.kind == "OP" and self.cur.text in "+-":
            signs.append(1 if self.cur.text == "+" else -1)
            self.pos += 1
            terms.append(self.term())
        if len(terms) == 1 and signs[0] == 1:
            return terms[0]
        return Sum(start.span, tuple(terms), tuple(signs))

    def term(self):
        start = self.cur
        factors = [self.factor()]
        while self.cur.kind == "OP" and self.cur.text == "*":
            self.pos += 1
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(start.span, tuple(factors))

    def factor(self):
        atom = self.atom()
        if self.cur.kind == "OP" and self.cur.text == "^":
            if isinstance(atom, QPower):
                self._fail("repeated exponent on q")
            self.pos += 1
            return Power(atom.span, atom, self._signed_int())
        return atom

    def _signed_int(self):
        sign = 1
        if self.cur.kind == "OP" and self.cur.text == "-":
            sign = -1
            self.pos += 1
        tok = self.cur
        if tok.kind != "NUMBER":
            self._fail("expected an integer exponent")
        self.pos += 1
        return sign * int(tok.text)

    def atom(self):
        tok = self.cur
        if tok.kind == "NUMBER":
            self.pos += 1
            value = Fraction(int(tok.text))
            if self.cur.kind == "OP" and self.cur.text == "/":
                self.pos += 1
                den = self.cur
                if den.kind != "NUMBER":
                    self._fail("expected a denominator after '/'")
                if int(den.text) == 0:
                    self._fail("zero denominator", den)
                self.pos += 1
                value /= int(den.text)
            return Rational(tok.span, value)
        if tok.kind == "IDENT":
            self.pos += 1
            if tok.text == "i":
                return Imag(tok.span)
            if tok.text == "q":
                return self._q_tail(tok)
            return GenRef(tok.span, tok.text)
        if tok.kind == "OP" and tok.text == "(":
            self.pos += 1
            inner = self.expr()
            self._eat_op(")")
            return inner
        what = repr(tok.text) if tok.kind != "END" else "end of input"
        self._fail(f"expected a value, found {what}")

    def _q_tail(self, qtok):
        """q, q^k, or q^(k/2)."""
        if not (self.cur.kind == "OP" and self.cur.text == "^"):
            return QPower(qtok.span, 2)
        self.pos += 1
        if self.cur.kind == "OP" and self.cur.text == "(":
            self.pos += 1
            k = self._signed_int()
            self._eat_op("/")
            two = self.cur
            if two.kind != "NUMBER" or two.text != "2":
                self._fail("expected denominator 2 in a half-integer power of q")
            self.pos += 1
            self._eat_op(")")
            return QPower(qtok.span, k)
        return QPower(qtok.span, 2 * self._signed_int())


def parse(text):
    """Parse ``text`` into an AST; raises ExprError with line/column."""
    return _Parser(_tokenize(text)).parse()


# ---------------------------------------------------------------------------
# Lowering


def lower(node, spec):
    """Evaluate an AST into a normal-ordered polynomial over ``spec``."""
    if isinstance(node, Rational):
        return spec.scalar(node.value)
    if isinstance(node, Imag):
        return spec.scalar(LaurentScalar.imag_unit())
    if isinstance(node, QPower):
        return spec.scalar(LaurentScalar.s_power(node.s_exp))
    if isinstance(node, GenRef):
        try:
            spec.gen_index(node.name)
        except UnknownGeneratorError:
            raise ExprError(
                f"unknown generator {node.name!r} in algebra "
                f"{spec.name or '<anonymous>'!r}",
                node.span.line, node.span.column) from None
        return spec.word((node.name,))
    if isinstance(node, Power):
        base = lower(node.base, spec)
        k = node.exponent
        if k >= 0:
            return base ** k
        part = base.scalar_part()
        if len(base.terms) == 1 and part:
            try:
                return spec.scalar(part.inverse_monomial()) ** (-k)
            except ValueError:
                pass
        raise ExprError("negative powers apply only to invertible scalars",
                        node.span.line, node.span.column)
    if isinstance(node, Product):
        out = spec.one()
        for f in node.factors:
            out = out * lower(f, spec)
        return out
    if isinstance(node, Sum):
        out = spec.zero()
        for sign, term in zip(node.signs, node.terms):
            part = lower(term, spec)
            out = out + part if sign > 0 else out - part
        return out
    raise TypeError(f"unknown node {node!r}")


def parse_poly(text, spec):
    """parse + lower in one step."""
    return lower(parse(text), spec)


def print_canonical(p: NCPoly) -> str:
    """Deterministic rendering inside the grammar; inverse of parse_poly."""
    return poly_to_text(p)
