"""Text syntax for polynomials, 1-forms, vector fields and ODEs.

Grammar (precedence high to low)::

    power   := atom ['^' unary]          exponent must be a constant integer >= 0
    unary   := ('-' | '+') unary | power
    term    := unary (('*' | '/') unary)*
    expr    := term (('+' | '-') term)*
    atom    := NUMBER | VAR | '(' expr ')'

Juxtaposition is never multiplication: ``2x1`` and ``x2x3`` are errors.
Division is only by nonzero constants except on the right-hand side of an
ODE, where it builds the quotient P/Q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .exterior import DiffForm, VectorField
from .flags import SecondOrderODE
from .polyring import Poly

ALIASES = {"u": 0, "u'": 1, "t": 2}


class ParseError(ValueError):
    def __init__(self, kind: str, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.kind = kind
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    offset: int
    length: int


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    span: Span


@dataclass(frozen=True)
class Var:
    index: int
    span: Span


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    span: Span


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, "Expr"], ...]  # (sign, term)
    span: Span


@dataclass(frozen=True)
class Product:
    factors: tuple[tuple[str, "Expr"], ...]  # ('*' | '/', factor)
    span: Span


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int
    span: Span


Expr = Union[Num, Var, Neg, Sum, Product, Power]


# -- lexer ------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*/^()\[\],=])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, end
    text: str
    span: Span


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError("lexical", f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            for i, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            tokens.append(Token(kind, text, Span(line, col, pos, len(text))))
        pos = m.end()
    tokens.append(Token("end", "", Span(line, pos - line_start + 1, pos, 0)))
    return tokens


# -- parser -----------------------------------------------------------------

_IMPLICIT = re.compile(r"(x\d+|u'*|t){2,}")


class _Parser:
    def __init__(self, src: str, nvars: int, basis_prefix: str | None = None):
        self.tokens = tokenize(src)
        self.i = 0
        self.n = nvars
        self.basis_prefix = basis_prefix

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            self.error("syntax", f"expected {op!r}, found {self.describe(self.tok)}")
        return self.advance()

    def error(self, kind: str, message: str, tok: Token | None = None):
        t = tok or self.tok
        raise ParseError(kind, message, t.span.line, t.span.col)

    @staticmethod
    def describe(t: Token) -> str:
        return "end of input" if t.kind == "end" else repr(t.text)

    def span_from(self, start: Token) -> Span:
        last = self.tokens[self.i - 1]
        return Span(start.span.line, start.span.col, start.span.offset,
                    last.span.offset + last.span.length - start.span.offset)

    def basis_index(self, t: Token) -> int | None:
        """Index of a basis symbol like dx2 / d2, or None."""
        if self.basis_prefix is None or t.kind != "ident":
            return None
        m = re.fullmatch(re.escape(self.basis_prefix) + r"(\d+)", t.text)
        if not m:
            return None
        k = int(m.group(1))
        if not 1 <= k <= self.n:
            self.error("unknown-variable", f"basis symbol {t.text} out of range for dimension {self.n}", t)
        return k - 1

    def at_basis(self) -> bool:
        return self.basis_index(self.tok) is not None

    def resolve(self, t: Token) -> int:
        name = t.text
        m = re.fullmatch(r"x(\d+)", name)
        if m and 1 <= int(m.group(1)) <= self.n:
            return int(m.group(1)) - 1
        if name in ALIASES:
            if self.n != 3:
                self.error("unknown-variable", f"alias {name} is only available in dimension 3", t)
            return ALIASES[name]
        if m:
            self.error("unknown-variable", f"variable {name} out of range for dimension {self.n}", t)
        if _IMPLICIT.fullmatch(name):
            self.error("unknown-variable",
                       f"unknown variable {name!r} (implicit multiplication is not allowed; use '*')", t)
        self.error("unknown-variable", f"unknown variable {name!r}", t)

    # grammar
    def expr(self) -> Expr:
        start = self.tok
        terms = [(1, self.term())]
        while self.at_op("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1:
            return terms[0][1]
        return Sum(tuple(terms), self.span_from(start))

    def term(self) -> Expr:
        start = self.tok
        factors = [("*", self.unary())]
        while self.at_op("*", "/"):
            if self.at_op("*") and self.basis_index(self.tokens[self.i + 1]) is not None:
                self.advance()  # 'coef * dx1'
                break
            op = self.advance().text
            factors.append((op, self.unary()))
        if len(factors) == 1:
            return factors[0][1]
        return Product(tuple(factors), self.span_from(start))

    def unary(self) -> Expr:
        start = self.tok
        if self.at_op("-"):
            self.advance()
            return Neg(self.unary(), self.span_from(start))
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        start = self.tok
        base = self.atom()
        if not self.at_op("^"):
            self.check_juxtaposition()
            return base
        self.advance()
        etok = self.tok
        exp = to_poly(self.unary(), self.n)
        if not exp.is_constant or exp.constant_term.denominator != 1:
            self.error("syntax", "exponent must be a constant integer", etok)
        if exp.constant_term < 0:
            self.error("negative-exponent", "negative exponents are not allowed", etok)
        node = Power(base, int(exp.constant_term), self.span_from(start))
        self.check_juxtaposition()
        return node

    def check_juxtaposition(self):
        t = self.tok
        if t.kind == "num" or (t.kind == "ident" and self.basis_index(t) is None) or self.at_op("("):
            self.error("syntax", "implicit multiplication is not allowed; use '*'")

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(int(t.text), t.span)
        if t.kind == "ident":
            if self.basis_index(t) is not None:
                self.error("syntax", f"unexpected basis symbol {t.text}")
            self.advance()
            return Var(self.resolve(t), t.span)
        if self.at_op("("):
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        self.error("syntax", f"unexpected {self.describe(t)}")

    def finish(self):
        if self.tok.kind != "end":
            self.error("syntax", f"unexpected {self.describe(self.tok)}")


# -- evaluation ---------------------------------------------------------------

def _span_error(kind: str, message: str, node) -> ParseError:
    return ParseError(kind, message, node.span.line, node.span.col)


def to_poly(e: Expr, n: int) -> Poly:
    """Evaluate an AST; '/' must have a nonzero constant right operand."""
    if isinstance(e, Num):
        return Poly.const(n, e.value)
    if isinstance(e, Var):
        return Poly.var(n, e.index)
    if isinstance(e, Neg):
        return -to_poly(e.operand, n)
    if isinstance(e, Sum):
        out = Poly.zero(n)
        for sign, t in e.terms:
            p = to_poly(t, n)
            out = out + p if sign > 0 else out - p
        return out
    if isinstance(e, Product):
        out = Poly.const(n, 1)
        for op, f in e.factors:
            p = to_poly(f, n)
            if op == "*":
                out = out * p
            elif not p:
                raise _span_error("zero-denominator", "division by zero", f)
            elif not p.is_constant:
                raise _span_error("division", "division is only allowed by a nonzero constant", f)
            else:
                out = out.scale(1 / p.constant_term)
        return out
    if isinstance(e, Power):
        return to_poly(e.base, n) ** e.exponent
    raise TypeError(e)


def to_quotient(e: Expr, n: int) -> tuple[Poly, Poly]:
    """Evaluate an AST as a rational function numerator/denominator."""
    if isinstance(e, Sum):
        num, den = Poly.zero(n), Poly.const(n, 1)
        for sign, t in e.terms:
            a, b = to_quotient(t, n)
            if sign < 0:
                a = -a
            num, den = (num * b + a * den, den * b) if den != b else (num + a, den)
        return num, den
    if isinstance(e, Neg):
        a, b = to_quotient(e.operand, n)
        return -a, b
    if isinstance(e, Product):
        num, den = Poly.const(n, 1), Poly.const(n, 1)
        for op, f in e.factors:
            a, b = to_quotient(f, n)
            if op == "*":
                num, den = num * a, den * b
            elif not a:
                raise _span_error("zero-denominator", "division by zero", f)
            else:
                num, den = num * b, den * a
        return num, den
    if isinstance(e, Power):
        a, b = to_quotient(e.base, n)
        return a ** e.exponent, b ** e.exponent
    return to_poly(e, n), Poly.const(n, 1)


# -- entry points ---------------------------------------------------------------

def parse_expr(src: str, n: int) -> Expr:
    p = _Parser(src, n)
    e = p.expr()
    p.finish()
    return e


def parse_poly(src: str, n: int) -> Poly:
    return to_poly(parse_expr(src, n), n)


def _parse_basis_sum(src: str, n: int, prefix: str) -> list[Poly]:
    p = _Parser(src, n, basis_prefix=prefix)
    comps = [Poly.zero(n) for _ in range(n)]
    seen: set[int] = set()
    if p.tok.kind == "num" and p.tok.text == "0" and p.tokens[1].kind == "end":
        return comps
    sign = 1
    while True:
        if p.at_basis():
            coef = Poly.const(n, sign)
        else:
            if p.at_op("+", "-"):
                # leading sign before a bare basis symbol or a coefficient
                if p.basis_index(p.tokens[p.i + 1]) is not None:
                    sign = sign if p.advance().text == "+" else -sign
                    continue
            coef = to_poly(p.term(), n).scale(sign)
            if not p.at_basis():
                p.error("syntax", f"expected a basis symbol {prefix}1..{prefix}{n}, found {p.describe(p.tok)}")
        t = p.advance()
        k = p.basis_index(t)
        if k in seen:
            p.error("duplicate-basis", f"duplicate basis term {t.text}", t)
        seen.add(k)
        comps[k] = coef
        if p.tok.kind == "end":
            return comps
        if not p.at_op("+", "-"):
            p.error("syntax", f"expected '+' or '-', found {p.describe(p.tok)}")
        sign = 1 if p.advance().text == "+" else -1


def parse_form(src: str, n: int) -> DiffForm:
    """A 1-form written ``A1 dx1 + A2 dx2 + ...``."""
    return DiffForm.one_form(_parse_basis_sum(src, n, "dx"))


def parse_field(src: str, n: int) -> VectorField:
    """A vector field ``[f1, ..., fn]`` or ``f1 d1 + f2 d2 + ...``."""
    if src.lstrip().startswith("["):
        p = _Parser(src, n)
        p.expect_op("[")
        comps = [to_poly(p.expr(), n)]
        while p.at_op(","):
            p.advance()
            comps.append(to_poly(p.expr(), n))
        p.expect_op("]")
        p.finish()
        if len(comps) != n:
            raise ParseError("syntax", f"expected {n} components, found {len(comps)}", 1, 1)
        return VectorField(comps)
    return VectorField(_parse_basis_sum(src, n, "d"))


def parse_ode(src: str) -> SecondOrderODE:
    """``u'' = RHS`` with RHS any expression in u, u', t (or x1, x2, x3)."""
    p = _Parser(src, 3)
    head = p.tok
    if head.kind != "ident" or head.text != "u''":
        p.error("missing-head", "an ODE must start with \"u'' =\"")
    p.advance()
    p.expect_op("=")
    e = p.expr()
    p.finish()
    P, Q = to_quotient(e, 3)
    return SecondOrderODE(P, Q)
