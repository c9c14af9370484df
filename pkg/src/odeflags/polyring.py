"""Exact multivariate polynomials over the rationals.

A :class:`Poly` lives in a fixed ambient ring Q[x1, ..., xn].  Terms are kept
in a dict mapping exponent tuples to nonzero :class:`fractions.Fraction`
coefficients, so equality is a dict comparison.  Variables are addressed by
0-based index (``x1`` is index 0); the 1-based names only appear in text.

The monomial order is graded reverse lexicographic with x1 > x2 > ... > xn.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as igcd, lcm as ilcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Operands live in rings with different variable counts."""


class InexactDivision(ArithmeticError):
    """The divisor does not divide the dividend exactly."""


def grevlex_key(e: Exponent) -> tuple[int, ...]:
    """Sort key such that a larger key means a larger monomial in grevlex."""
    return (sum(e), *(-k for k in reversed(e)))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected a rational coefficient, got {type(c).__name__}")


class Poly:
    """An immutable polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_lead", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise DimensionMismatch(f"exponent {e} does not have length {nvars}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            c = _as_fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._set(nvars, clean)

    def _set(self, nvars, terms):
        self.nvars = nvars
        self.terms = terms
        self._lead = None
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> Poly:
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p._set(nvars, terms)
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> Poly:
        c = _as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> Poly:
        return cls(len(e), {tuple(e): c})

    @classmethod
    def gens(cls, nvars: int) -> tuple[Poly, ...]:
        return tuple(cls.var(nvars, i) for i in range(nvars))

    # -- basic properties --------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        if self._lead is None:
            e = max(self.terms, key=grevlex_key)
            self._lead = (e, self.terms[e])
        return self._lead

    @property
    def leading_monomial(self) -> Exponent:
        return self.leading_term()[0]

    @property
    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1]

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __pos__(self) -> Poly:
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Poly:
        c = _as_fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {e: c * v for e, v in self.terms.items()})

    def mul_term(self, e: Exponent, c: Fraction) -> Poly:
        return Poly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, m)): c * v for m, v in self.terms.items()},
        )

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / _as_fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return div_exact(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == Poly.const(self.nvars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation -------------------------------------
    def diff(self, i: int) -> Poly:
        """Formal partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return Poly._raw(self.nvars, out)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            total += v
        return total

    def extend(self, extra: int = 1) -> Poly:
        """The same polynomial in a ring with ``extra`` new trailing variables."""
        pad = (0,) * extra
        return Poly._raw(self.nvars + extra, {e + pad: c for e, c in self.terms.items()})

    def coefficients_in(self, i: int) -> dict[int, Poly]:
        """Write self = sum_k c_k * x_i^k; returns {k: c_k} with c_k free of x_i."""
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly._raw(self.nvars, t) for k, t in parts.items()}

    # -- normalization -----------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = reduce(igcd, (c.numerator for c in self.terms.values()))
        den = reduce(ilcm, (c.denominator for c in self.terms.values()))
        return Fraction(abs(num), den)

    def primitive(self) -> Poly:
        """Integer-coefficient primitive part with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coeff < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self) -> Poly:
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coeff)

    # -- printing -----------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, nvars={self.nvars})"


# -- printing ------------------------------------------------------------

def _format_monomial(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k > 1:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def _format_terms(p: Poly) -> str:
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = _format_monomial(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def format_poly(p: Poly) -> str:
    """Canonical text form: grevlex-descending terms; a negative leading
    coefficient on a multi-term polynomial is printed as ``-(...)``."""
    if not p.terms:
        return "0"
    if len(p.terms) > 1 and p.leading_coeff < 0:
        return f"-({_format_terms(-p)})"
    return _format_terms(p)


# -- module-level operations ----------------------------------------------

def _check(p: Poly, q: Poly) -> None:
    if p.nvars != q.nvars:
        raise DimensionMismatch(f"{p.nvars} vs {q.nvars} variables")


def add(p: Poly, q: Poly) -> Poly:
    _check(p, q)
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    _check(p, q)
    return p * q


def derivative(p: Poly, i: int) -> Poly:
    return p.diff(i)


def evaluate(p: Poly, point: Sequence) -> Fraction:
    return p.eval(point)


def div_exact(p: Poly, q: Poly) -> Poly:
    """Return r with r*q == p, or raise :class:`InexactDivision`."""
    _check(p, q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    lm_q, lc_q = q.leading_term()
    n = p.nvars
    rem = dict(p.terms)
    quot: dict[Exponent, Fraction] = {}
    q_terms = list(q.terms.items())
    while rem:
        lm = max(rem, key=grevlex_key)
        d = tuple(a - b for a, b in zip(lm, lm_q))
        if any(k < 0 for k in d):
            raise InexactDivision(f"{q} does not divide {p}")
        c = rem[lm] / lc_q
        quot[d] = c
        for e, v in q_terms:
            m = tuple(a + b for a, b in zip(e, d))
            s = rem.get(m, 0) - c * v
            if s:
                rem[m] = s
            else:
                rem.pop(m, None)
    return Poly._raw(n, quot)


def divides(q: Poly, p: Poly) -> bool:
    try:
        div_exact(p, q)
    except InexactDivision:
        return False
    return True


def _pseudo_rem(a: Poly, b: Poly, v: int) -> Poly:
    """Pseudo-remainder of a by b viewed as univariate polynomials in x_v."""
    db = b.degree_in(v)
    lc_b = b.coefficients_in(v)[db]
    unit = [0] * a.nvars
    r = a
    while r and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lc_r = r.coefficients_in(v)[dr]
        unit[v] = dr - db
        r = lc_b * r - lc_r * b.mul_term(tuple(unit), Fraction(1))
    return r


def _content_in(p: Poly, v: int) -> Poly:
    return reduce(_gcd, p.coefficients_in(v).values())


def _primitive_in(p: Poly, v: int) -> Poly:
    return div_exact(p, _content_in(p, v))


def _gcd(p: Poly, q: Poly) -> Poly:
    if not p:
        return q.primitive()
    if not q:
        return p.primitive()
    if p.is_constant or q.is_constant:
        return Poly.const(p.nvars, 1)
    vp, vq = p.variables(), q.variables()
    common = vp & vq
    if not common:
        # any common divisor is free of x_v, so it divides each x_v-coefficient of p
        v = min(vp)
        return reduce(_gcd, p.coefficients_in(v).values(), q)
    v = min(common)
    cp, cq = _content_in(p, v), _content_in(q, v)
    a, b = div_exact(p, cp).primitive(), div_exact(q, cq).primitive()
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    # primitive polynomial remainder sequence in x_v
    while True:
        r = _pseudo_rem(a, b, v)
        if not r:
            g = b
            break
        if r.degree_in(v) == 0:
            g = Poly.const(p.nvars, 1)
            break
        a, b = b, _primitive_in(r, v).primitive()  # drop numeric content too
    return (g * _gcd(cp, cq)).primitive()


def gcd(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor, primitive with positive leading coefficient.

    ``gcd(0, q)`` is the normalized ``q``; ``gcd(0, 0)`` is 0.
    """
    _check(p, q)
    return _gcd(p, q)


def gcd_list(polys: Iterable[Poly]) -> Poly:
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty list")
    return reduce(gcd, polys, Poly.zero(polys[0].nvars))


def remove_content(polys: Sequence[Poly]) -> tuple[Poly, list[Poly]]:
    """Divide out the gcd of the nonzero entries.

    Returns ``(g, reduced)`` with ``reduced[i] * g == polys[i]``.  The
    content ``g`` is 1 when the entries are already coprime.
    """
    g = gcd_list(polys)
    if not g:
        raise ValueError("all entries are zero")
    if g.is_constant:
        return Poly.const(g.nvars, 1), list(polys)
    return g, [div_exact(p, g) for p in polys]
