"""Gröbner bases and the membership questions built on them.

Buchberger's algorithm with the Gebauer-Möller pair update (which subsumes
the coprime-leading-term and chain criteria) and the normal selection
strategy.  Everything is over Q with the grevlex order of :mod:`polyring`.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .polyring import DimensionMismatch, Exponent, Poly, grevlex_key

DEFAULT_BUDGET = 10**6

_budget: contextvars.ContextVar[int] = contextvars.ContextVar("groebner_budget", default=DEFAULT_BUDGET)


class BudgetExceeded(RuntimeError):
    """A Gröbner computation used more S-pair reductions than allowed."""


@contextmanager
def step_budget(limit: int):
    """Cap S-pair reductions for Gröbner computations inside the block."""
    if limit < 1:
        raise ValueError("budget must be positive")
    token = _budget.set(limit)
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget() -> int:
    return _budget.get()


# -- monomial helpers -----------------------------------------------------

def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


# -- reduction ------------------------------------------------------------

def normal_form(f: Poly, basis: Sequence[Poly]) -> Poly:
    """Fully reduced remainder of ``f`` on division by ``basis``."""
    if not f or not basis:
        return f
    divisors = []
    for g in basis:
        lm, lc = g.leading_term()
        tail = [(e, c / lc) for e, c in g.terms.items() if e != lm]
        divisors.append((lm, tail))
    rem = dict(f.terms)
    out: dict[Exponent, Fraction] = {}
    while rem:
        m = max(rem, key=grevlex_key)
        c = rem.pop(m)
        for lm, tail in divisors:
            if _divides(lm, m):
                shift = _sub(m, lm)
                for e, v in tail:
                    t = tuple(a + b for a, b in zip(e, shift))
                    s = rem.get(t, 0) - c * v
                    if s:
                        rem[t] = s
                    else:
                        rem.pop(t, None)
                break
        else:
            out[m] = c
    return Poly._raw(f.nvars, out)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    lf, cf = f.leading_term()
    lg, cg = g.leading_term()
    m = _lcm(lf, lg)
    return f.mul_term(_sub(m, lf), 1 / cf) - g.mul_term(_sub(m, lg), 1 / cg)


# -- Buchberger -------------------------------------------------------------

def _update(polys, active, pairs, h_idx):
    """Gebauer-Möller update after appending polys[h_idx]."""
    lm = [p.leading_monomial for p in polys]
    h = lm[h_idx]
    candidates = list(active)
    kept = []
    while candidates:
        g = candidates.pop()
        lcm_hg = _lcm(h, lm[g])
        if _coprime(h, lm[g]) or not any(
            _divides(_lcm(h, lm[o]), lcm_hg) for o in candidates + kept
        ):
            kept.append(g)
    new_pairs = {(g, h_idx) for g in kept if not _coprime(h, lm[g])}
    old_pairs = set()
    for i, j in pairs:
        lij = _lcm(lm[i], lm[j])
        if _divides(h, lij) and _lcm(lm[i], h) != lij and _lcm(lm[j], h) != lij:
            continue
        old_pairs.add((i, j))
    new_active = [g for g in active if not _divides(h, lm[g])]
    new_active.append(h_idx)
    return new_active, old_pairs | new_pairs


def _reduce_basis(basis: list[Poly]) -> list[Poly]:
    basis = sorted((g.monic() for g in basis), key=lambda g: grevlex_key(g.leading_monomial))
    minimal: list[Poly] = []
    for g in basis:
        if not any(_divides(h.leading_monomial, g.leading_monomial) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lm, lc = g.leading_term()
        tail = Poly._raw(g.nvars, {e: c for e, c in g.terms.items() if e != lm})
        reduced.append(Poly._raw(g.nvars, {lm: lc}) + normal_form(tail, others))
    return sorted((g.monic() for g in reduced), key=lambda g: grevlex_key(g.leading_monomial), reverse=True)


def buchberger(generators: Iterable[Poly], budget: int | None = None) -> list[Poly]:
    """Reduced Gröbner basis of the ideal generated by ``generators``.

    The zero ideal has the empty basis.  Raises :class:`BudgetExceeded` if
    more than ``budget`` S-pairs are reduced.
    """
    budget = current_budget() if budget is None else budget
    gens = [g for g in generators if g]
    if not gens:
        return []
    n = gens[0].nvars
    one = Poly.const(n, 1)
    if any(g.is_constant for g in gens):
        return [one]
    polys: list[Poly] = []
    active: list[int] = []
    pairs: set[tuple[int, int]] = set()
    for g in gens:
        g = normal_form(g.monic(), [polys[i] for i in active])
        if not g:
            continue
        if g.is_constant:
            return [one]
        polys.append(g.monic())
        active, pairs = _update(polys, active, pairs, len(polys) - 1)
    steps = 0
    while pairs:
        # normal strategy: smallest lcm first, ties broken by index for determinism
        i, j = min(
            pairs,
            key=lambda p: (grevlex_key(_lcm(polys[p[0]].leading_monomial, polys[p[1]].leading_monomial)), p),
        )
        pairs.discard((i, j))
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"Gröbner computation exceeded {budget} S-pair reductions")
        h = normal_form(s_polynomial(polys[i], polys[j]), [polys[k] for k in active])
        if not h:
            continue
        if h.is_constant:
            return [one]
        polys.append(h.monic())
        active, pairs = _update(polys, active, pairs, len(polys) - 1)
    return _reduce_basis([polys[k] for k in active])


# -- ideals -----------------------------------------------------------------

class Ideal:
    """A polynomial ideal given by generators, with a lazily cached reduced basis."""

    __slots__ = ("nvars", "generators", "_basis")

    def __init__(self, generators: Iterable[Poly], nvars: int | None = None):
        gens = list(generators)
        if not gens and nvars is None:
            raise ValueError("an ideal needs at least one generator or an explicit nvars")
        n = gens[0].nvars if gens else nvars
        if any(g.nvars != n for g in gens) or (nvars is not None and n != nvars):
            raise DimensionMismatch("generators live in different rings")
        nonzero = [g for g in gens if g]
        self.nvars = n
        self.generators = tuple(nonzero) if nonzero else (Poly.zero(n),)
        self._basis: tuple[Poly, ...] | None = None

    def basis(self) -> tuple[Poly, ...]:
        if self._basis is None:
            self._basis = tuple(buchberger(self.generators))
        return self._basis

    @property
    def is_zero(self) -> bool:
        return not self.generators[0]

    @property
    def is_unit(self) -> bool:
        b = self.basis()
        return len(b) == 1 and b[0].is_constant

    def __contains__(self, f: Poly) -> bool:
        return member(f, self)

    def __repr__(self) -> str:
        return "Ideal<" + ", ".join(str(g) for g in self.generators) + ">"


def groebner(I: Ideal) -> Ideal:
    """An ideal whose generators are the reduced Gröbner basis of ``I``."""
    basis = I.basis()
    J = Ideal(basis, nvars=I.nvars)
    J._basis = basis
    return J


def member(f: Poly, I: Ideal) -> bool:
    if f.nvars != I.nvars:
        raise DimensionMismatch(f"{f.nvars} vs {I.nvars} variables")
    return not normal_form(f, I.basis())


def radical_member(f: Poly, I: Ideal) -> bool:
    """True iff f vanishes on V(I) over the algebraic closure.

    Rabinowitsch: adjoin a fresh last variable y and test whether
    1 lies in <I, 1 - y*f>.
    """
    if f.nvars != I.nvars:
        raise DimensionMismatch(f"{f.nvars} vs {I.nvars} variables")
    if not f:
        return True
    n = I.nvars
    y = Poly.var(n + 1, n)
    gens = [g.extend() for g in I.generators if g]
    gens.append(1 - y * f.extend())
    return Ideal(gens).is_unit


def variety_included(inner: Ideal, outer: Ideal) -> bool:
    """True iff V(inner) is contained in V(outer)."""
    if inner.nvars != outer.nvars:
        raise DimensionMismatch(f"{inner.nvars} vs {outer.nvars} variables")
    return all(radical_member(g, inner) for g in outer.generators)


def dimension(I: Ideal) -> int:
    """Krull dimension of V(I); -1 when V(I) is empty."""
    basis = I.basis()
    n = I.nvars
    if not basis:
        return n
    if I.is_unit:
        return -1
    supports = [frozenset(i for i, k in enumerate(g.leading_monomial) if k) for g in basis]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0
