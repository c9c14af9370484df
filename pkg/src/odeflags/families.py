"""Parametrised families of ODE flags.

Each builder returns ``(ode, X, w)`` where X is the field as written for the
family (possibly with a common factor) and ``ode`` is its reduced equation.
"""

from __future__ import annotations

from fractions import Fraction

from .exterior import DiffForm, VectorField, d
from .flags import SecondOrderODE, field_to_ode
from .polyring import Poly

FlagTriple = tuple[SecondOrderODE, VectorField, DiffForm]


def _ode_of(X: VectorField) -> SecondOrderODE:
    ode = field_to_ode(X)
    assert ode is not None
    return ode


def _laurent_form(rows: list[list[tuple[Fraction, tuple[int, int, int]]]]) -> DiffForm:
    """1-form from Laurent terms, multiplied by the least x1^a x3^b clearing denominators."""
    rows = [[(c, e) for c, e in row if c] for row in rows]
    exps = [e for row in rows for _, e in row]
    if not exps:
        raise ValueError("parameters give the zero form")
    shift = [max(0, -min(e[i] for e in exps)) for i in range(3)]
    comps = []
    for row in rows:
        terms: dict[tuple[int, ...], Fraction] = {}
        for c, e in row:
            k = tuple(a + s for a, s in zip(e, shift))
            terms[k] = terms.get(k, 0) + c
        comps.append(Poly(3, terms))
    return DiffForm.one_form(comps)


def emden_fowler(k, m: int, n: int) -> FlagTriple:
    """u'' = k t^m u^n, with negative powers moved into Q.

    The partner form is the Laurent form of the family multiplied by the
    monomial in u and t that clears its denominators.
    """
    k = Fraction(k)
    if not k:
        raise ValueError("k must be nonzero")
    if not isinstance(m, int) or not isinstance(n, int) or not m or not n:
        raise ValueError("m and n must be nonzero integers")
    P = Poly.monomial((max(n, 0), 0, max(m, 0)), k)
    Q = Poly.monomial((max(-n, 0), 0, max(-m, 0)), 1)
    ode = SecondOrderODE(P, Q)
    x2 = Poly.var(3, 1)
    X = VectorField([x2 * Q, P, Q])
    w = _laurent_form([
        [(-(n - 1) * k, (n, 0, 1)), (Fraction(-(m + n + 1)), (0, 1, -m))],
        [(Fraction(n - 1), (0, 1, 1 - m)), (Fraction(m + 2), (1, 0, -m))],
        [(-k * (m + 2), (n + 1, 0, 0)), (Fraction(m + n + 1), (0, 2, -m))],
    ])
    return ode, X, w


def compose_with_product(F: Poly) -> Poly:
    """F(x1, x2*x3) for F in two variables."""
    if F.nvars != 2:
        raise ValueError("F must be a polynomial in two variables")
    return Poly(3, {(a, b, b): c for (a, b), c in F.terms.items()})


def log_type(F: Poly) -> FlagTriple:
    """X = x1 x2 x3 d1 - x2 f(x1, x2 x3) d2 + x1 x3 d3  with
    w = (f - x1) dx1 + x1 x3 dx2 + x1 x2 dx3."""
    fg = compose_with_product(F)
    x1, x2, x3 = Poly.gens(3)
    X = VectorField([x1 * x2 * x3, -x2 * fg, x1 * x3])
    w = DiffForm.one_form([fg - x1, x1 * x3, x1 * x2])
    return _ode_of(X), X, w


def linear_in_time(a: Poly, b: Poly, c: Poly, corrected: bool = True) -> FlagTriple:
    """a(t) u'' + b(t) u' + c(t) u = 0 with its quadratic partner form.

    ``corrected=False`` returns the variant with A2 = a, which is not tangent
    to X; the default uses A2 = a*x1.
    """
    for p in (a, b, c):
        if p.nvars != 3 or p.diff(0) or p.diff(1):
            raise ValueError("coefficients must depend on x3 only")
    if not a:
        raise ValueError("a must be nonzero")
    x1, x2, _ = Poly.gens(3)
    X = VectorField([x2 * a, -(b * x2 + c * x1), a])
    A2 = a * x1 if corrected else a
    w = DiffForm.one_form([-a * x2, A2, a * x2**2 + b * x1 * x2 + c * x1**2])
    return _ode_of(X), X, w


def three_partners() -> tuple[VectorField, list[DiffForm]]:
    """u'' = 1 with three partner forms built from F1 = x2 - x3, F2 = x1 - x2^2/2."""
    x1, x2, x3 = Poly.gens(3)
    X = VectorField([x2, Poly.const(3, 1), Poly.const(3, 1)])
    F1 = x2 - x3
    F2 = x1 - x2**2 * Fraction(1, 2)
    return X, [d(F2), d(F1 + F2), d(F1 * F2)]
