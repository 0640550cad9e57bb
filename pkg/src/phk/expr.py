"""Text form of polynomials and tensors: recursive-descent parser + printer.

Grammar (whitespace insignificant):

    expr     :=  ['+'|'-'] term (('+'|'-') term)*
    term     :=  factor ('*' factor)*
    factor   :=  primary ('^' nonneg-int)*
    primary  :=  rational | name | '(' expr ')'
    rational :=  int ['/' positive-int]

Tensor expressions are sums whose summands each contain exactly one '@'
at term level: ``P @ Q`` with P, Q term-level polynomial expressions;
parenthesized subexpressions may appear inside P or Q.

The printer emits a canonical form (terms in descending degree-then-
exponent order) that parses back to the same value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ExprSyntaxError
from .poly import Mono, Poly, TensorPoly


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "name" | one of "+-*/^()@" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
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
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^()@":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = list(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.nvars = len(self.names)
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.advance()

    def parse_poly(self) -> Poly:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.pos)
        return value

    def expr(self) -> Poly:
        sign = 1
        if self.peek().kind in "+-":
            if self.advance().kind == "-":
                sign = -1
        acc = self.term().scale(sign)
        while self.peek().kind in "+-":
            op = self.advance().kind
            nxt = self.term()
            acc = acc + (nxt if op == "+" else -nxt)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek().kind == "*":
            self.advance()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.primary()
        while self.peek().kind == "^":
            self.advance()
            tok = self.expect("int")
            base = base ** int(tok.text)
        return base

    def primary(self) -> Poly:
        tok = self.peek()
        if tok.kind == "int":
            return Poly.const(self.nvars, self.rational())
        if tok.kind == "name":
            self.advance()
            idx = self.index.get(tok.text)
            if idx is None:
                raise ExprSyntaxError(f"unknown name {tok.text!r}", tok.pos)
            return Poly.variable(self.nvars, idx)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprSyntaxError(f"expected a factor, found {tok.text or 'end of input'!r}", tok.pos)

    def rational(self) -> Fraction:
        tok = self.expect("int")
        num = int(tok.text)
        if self.peek().kind == "/":
            self.advance()
            den_tok = self.expect("int")
            den = int(den_tok.text)
            if den <= 0:
                raise ExprSyntaxError(f"denominator must be positive, got {den}", den_tok.pos)
            return Fraction(num, den)
        return Fraction(num)

    # -- tensor grammar -------------------------------------------------

    def parse_tensor(self) -> TensorPoly:
        acc = TensorPoly.zero(self.nvars)
        sign = 1
        if self.peek().kind in "+-":
            if self.advance().kind == "-":
                sign = -1
        acc = acc + self.tensor_summand().scale(sign)
        while self.peek().kind in "+-":
            op = self.advance().kind
            nxt = self.tensor_summand()
            acc = acc + (nxt if op == "+" else -nxt)
        tok = self.peek()
        if tok.kind == "@":
            raise ExprSyntaxError("nested '@' in tensor expression", tok.pos)
        if tok.kind != "end":
            raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.pos)
        return acc

    def tensor_summand(self) -> TensorPoly:
        start = self.peek().pos
        left = self.term()
        tok = self.peek()
        if tok.kind != "@":
            raise ExprSyntaxError("missing '@' in tensor summand", start)
        self.advance()
        right = self.term()
        if self.peek().kind == "@":
            raise ExprSyntaxError("nested '@' in tensor expression", self.peek().pos)
        return TensorPoly.of(left, right)


def parse_poly_expr(text: str, names: Sequence[str]) -> Poly:
    """Parse a polynomial expression over the given variable names."""
    return _Parser(text, names).parse_poly()


def parse_tensor_expr(text: str, names: Sequence[str]) -> TensorPoly:
    """Parse a sum of ``P @ Q`` tensor summands over the given names."""
    return _Parser(text, names).parse_tensor()


# -- printing ------------------------------------------------------------


def _mono_key(mono: Mono):
    return (sum(mono), mono)


def _format_mono(mono: Mono, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_coeff(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _term_text(coeff: Fraction, body: str) -> tuple[str, str]:
    """Returns (sign, unsigned text) for one term."""
    sign = "-" if coeff < 0 else "+"
    mag = -coeff if coeff < 0 else coeff
    if not body:
        return sign, _format_coeff(mag)
    if mag == 1:
        return sign, body
    return sign, f"{_format_coeff(mag)}*{body}"


def _join_terms(pieces: list[tuple[str, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for idx, (sign, text) in enumerate(pieces):
        if idx == 0:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


def poly_to_expr(p: Poly, names: Sequence[str]) -> str:
    """Canonical text for a polynomial; parses back to the same value."""
    terms = sorted(p.terms.items(), key=lambda kv: _mono_key(kv[0]), reverse=True)
    return _join_terms([_term_text(c, _format_mono(m, names)) for m, c in terms])


def tensor_to_expr(t: TensorPoly, names: Sequence[str]) -> str:
    """Canonical text for a tensor; coefficient attaches to the left factor."""
    if t.is_zero:
        return "0@1"  # plain "0" would not re-parse as a tensor summand
    pieces = []
    for (left, right), coeff in sorted(
        t.terms.items(), key=lambda kv: (_mono_key(kv[0][0]), _mono_key(kv[0][1])), reverse=True
    ):
        ltxt = _format_mono(left, names)
        rtxt = _format_mono(right, names) or "1"
        sign, unsigned = _term_text(coeff, ltxt)
        pieces.append((sign, f"{unsigned}@{rtxt}"))
    return _join_terms(pieces)
