"""Flags of foliations attached to second-order ODEs  u'' = P/Q.

Coordinates follow the ODE chart: x1 = u, x2 = u', x3 = t.  In dimension
n the slot x_{n-1} carries the top derivative and x_n is time.

A flag is a pair (X, w): a vector field X and an integrable 1-form w with
w(X) == 0.  It is an *ODE flag* when X has the shape (x2*Q, P, Q).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .exterior import (
    DiffForm,
    VectorField,
    d,
    evaluate_on,
    field_wedge,
    is_closed,
    is_integrable,
    top_coefficient,
    wedge,
)
from .ideals import Ideal, dimension, variety_included
from .polyring import DimensionMismatch, Poly, div_exact, gcd, remove_content

U, DU, T = 0, 1, 2


class Classification(str, enum.Enum):
    NONSINGULAR_F2 = "NONSINGULAR_F2"
    ISOLATED_SING = "ISOLATED_SING"
    CODIM_2 = "CODIM_2"
    REJECTED = "REJECTED"


class ConsistencyError(RuntimeError):
    """A result that the theory rules out (e.g. a codimension-one singular set
    after content removal)."""


@dataclass(frozen=True)
class Note:
    code: str
    message: str


# -- the ODE carrier ----------------------------------------------------------

@dataclass(frozen=True)
class SecondOrderODE:
    """u'' = P(u, u', t) / Q(u, u', t), stored with gcd(P, Q) divided out.

    ``removed_factor`` records the common factor removed on construction
    (the constant 1 when the input was already reduced).
    """

    P: Poly
    Q: Poly
    removed_factor: Poly = field(init=False, compare=False)

    def __post_init__(self):
        if self.P.nvars != 3 or self.Q.nvars != 3:
            raise DimensionMismatch("a second-order ODE lives in 3 variables (u, u', t)")
        if not self.Q:
            raise ValueError("Q must not be identically zero")
        g = gcd(self.P, self.Q)
        if g.is_constant:
            g = Poly.const(3, 1)
        else:
            object.__setattr__(self, "P", div_exact(self.P, g))
            object.__setattr__(self, "Q", div_exact(self.Q, g))
        object.__setattr__(self, "removed_factor", g)

    @property
    def was_reduced(self) -> bool:
        return not self.removed_factor.is_constant


def ode_to_field(ode: SecondOrderODE) -> VectorField:
    """X = x2*Q d/dx1 + P d/dx2 + Q d/dx3."""
    x2 = Poly.var(3, DU)
    return VectorField([x2 * ode.Q, ode.P, ode.Q])


def field_to_ode(X: VectorField) -> SecondOrderODE | None:
    """Recognize the ODE shape; ``None`` when f1 - x2*f3 is not identically zero."""
    if X.nvars != 3:
        raise DimensionMismatch("ODE fields live in 3 variables")
    f1, f2, f3 = X.components
    if f1 - Poly.var(3, DU) * f3 or not f3:
        return None
    return SecondOrderODE(f2, f3)


def is_autonomous(ode: SecondOrderODE) -> bool:
    return not ode.P.diff(T) and not ode.Q.diff(T)


def is_trivially_reduced(ode: SecondOrderODE) -> bool:
    """P and Q do not depend on u."""
    return not ode.P.diff(U) and not ode.Q.diff(U)


# -- singular sets ----------------------------------------------------------

def _coefficients(obj: VectorField | DiffForm) -> list[Poly]:
    if isinstance(obj, VectorField):
        return list(obj.components)
    if isinstance(obj, DiffForm) and obj.degree == 1:
        return obj.components()
    raise TypeError("expected a vector field or a 1-form")


def content(obj: VectorField | DiffForm) -> tuple[Poly, list[Poly]]:
    """Common factor of the components and the reduced components."""
    comps = _coefficients(obj)
    if not any(comps):
        raise ValueError("identically zero object has no singular set")
    return remove_content(comps)


def singular_ideal(obj: VectorField | DiffForm) -> Ideal:
    """Ideal of the singular set after dividing out the common factor."""
    _, comps = content(obj)
    return Ideal(comps)


def check_inclusion(X: VectorField, w: DiffForm) -> bool:
    """Is Sing(w) contained in Sing(X)?"""
    return variety_included(singular_ideal(w), singular_ideal(X))


# -- construction of tangent fields -------------------------------------------

def _raw_tangent_field(w: DiffForm) -> tuple[list[Poly], Poly, Poly]:
    A = w.components()
    n = w.nvars
    xs = Poly.gens(n)
    top = A[n - 1] + sum((xs[j + 1] * A[j] for j in range(n - 2)), Poly.zero(n))
    comps = [xs[j + 1] * A[n - 2] for j in range(n - 2)]
    comps += [-top, A[n - 2]]
    return comps, A[n - 2], top


def tangent_field(w: DiffForm) -> VectorField:
    """Vector field of higher-order ODE shape tangent to the 1-form ``w``.

    Builds  sum_{j<=n-2} x_{j+1} A_{n-1} d/dx_j - (A_n + sum x_{j+1} A_j) d/dx_{n-1}
    + A_{n-1} d/dx_n  and divides out the gcd of A_{n-1} and A_n + sum x_{j+1} A_j.
    """
    if w.degree != 1:
        raise ValueError("tangent_field needs a 1-form")
    if w.nvars < 3:
        raise ValueError("tangent_field needs at least 3 variables")
    if w.is_zero:
        raise ValueError("the zero form defines no foliation")
    comps, a, top = _raw_tangent_field(w)
    g = gcd(a, top)
    if not g:
        raise ValueError(f"degenerate form {w}: the constructed field vanishes identically")
    if not g.is_constant:
        comps = [div_exact(c, g) for c in comps]
    return VectorField(comps)


def same_foliation(X1: VectorField, X2: VectorField) -> bool:
    """X1 ^ X2 == 0, i.e. the fields are proportional over the function field."""
    return not any(field_wedge(X1, X2).values())


# -- obstructions -------------------------------------------------------------

@dataclass(frozen=True)
class Obstructions:
    a1_zero: bool
    a2_zero: bool
    a3_zero: bool

    @property
    def flag_possible(self) -> bool:
        """A partner of an ODE field never has A2 == 0."""
        return not self.a2_zero


def obstructions(w: DiffForm) -> Obstructions:
    if w.degree != 1 or w.nvars != 3:
        raise ValueError("obstructions are defined for 1-forms in 3 variables")
    A1, A2, A3 = w.components()
    return Obstructions(a1_zero=not A1, a2_zero=not A2, a3_zero=not A3)


def autonomous_partner(ode: SecondOrderODE) -> DiffForm:
    """-P dx1 + x2 Q dx2, a partner with A3 == 0 for autonomous equations."""
    if not is_autonomous(ode):
        raise ValueError("equation depends on t")
    x2 = Poly.var(3, DU)
    return DiffForm.one_form([-ode.P, x2 * ode.Q, Poly.zero(3)])


def trivially_reduced_partner(ode: SecondOrderODE) -> DiffForm:
    """Q dx2 - P dx3, a partner with A1 == 0 when P, Q do not involve u."""
    if not is_trivially_reduced(ode):
        raise ValueError("equation depends on u")
    return DiffForm.one_form([Poly.zero(3), ode.Q, -ode.P])


# -- builders -------------------------------------------------------------------

def _require_free_of(polys: Sequence[Poly], var: int, what: str) -> None:
    for p in polys:
        if p.nvars != 3:
            raise DimensionMismatch("coefficients live in 3 variables")
        if p.diff(var):
            raise ValueError(f"{what}: {p} depends on x{var + 1}")


def quasilinear_condition(a1: Poly, a2: Poly, a3: Poly) -> Poly:
    """-a3 da2/dx1 + a2 da3/dx1 - a2 da1/dx3 + a1 da2/dx3, zero iff the form is integrable."""
    return -a3 * a2.diff(U) + a2 * a3.diff(U) - a2 * a1.diff(T) + a1 * a2.diff(T)


def quasilinear_flag(a1: Poly, a2: Poly, a3: Poly) -> tuple[VectorField, DiffForm] | None:
    """Flag for  a2(u,t) u'' + a1(u,t) u' + a3(u,t) = 0.

    Returns ``None`` when the integrability condition fails.
    """
    _require_free_of((a1, a2, a3), DU, "quasilinear coefficients must not involve u'")
    if not a2:
        raise ValueError("a2 must not be identically zero")
    if quasilinear_condition(a1, a2, a3):
        return None
    x2 = Poly.var(3, DU)
    X = VectorField([x2 * a2, -(x2 * a1 + a3), a2])
    return X, DiffForm.one_form([a1, a2, a3])


def separable_flag(a1: Poly, a2: Poly, a3: Poly) -> tuple[VectorField, DiffForm, Poly]:
    """Flag for  a2(u') u'' + a1(u) u' + a3(t) = 0, with the closed form's potential."""
    for p, keep in ((a1, U), (a2, DU), (a3, T)):
        for v in range(3):
            if v != keep:
                _require_free_of([p], v, "separable coefficient")
    if not a2:
        raise ValueError("a2 must not be identically zero")
    x2 = Poly.var(3, DU)
    X = VectorField([x2 * a2, -(a3 + x2 * a1), a2])
    w = DiffForm.one_form([a1, a2, a3])
    return X, w, potential(w)


def potential(w: DiffForm) -> Poly:
    """f with df == w and f(0) == 0, via the radial homotopy.

    For a monomial term c*x^e of A_j the contribution is c/(|e|+1) * x^e * x_j.
    """
    if w.degree != 1:
        raise ValueError("potential needs a 1-form")
    if not is_closed(w):
        raise ValueError("form is not closed")
    n = w.nvars
    terms: dict[tuple[int, ...], Fraction] = {}
    for (j,), A in w.coeffs.items():
        for e, c in A.terms.items():
            e2 = e[:j] + (e[j] + 1,) + e[j + 1:]
            terms[e2] = terms.get(e2, 0) + c / (sum(e) + 1)
    return Poly(n, terms)


def is_first_integral(f: Poly, X: VectorField) -> bool:
    if f.is_constant:
        raise ValueError("a first integral must be nonconstant")
    return evaluate_on(d(f), X).is_zero


def functionally_independent(w1: DiffForm, w2: DiffForm) -> bool:
    return not wedge(w1, w2).is_zero


def triple_wedge_zero(w1: DiffForm, w2: DiffForm, w3: DiffForm) -> bool:
    if not w1.nvars == w2.nvars == w3.nvars == 3:
        raise ValueError("triple wedge test is for 1-forms in 3 variables")
    return top_coefficient(wedge(wedge(w1, w2), w3)).is_zero


def eta_form(ode: SecondOrderODE) -> DiffForm:
    """Q dx1^dx2 + x2 Q dx2^dx3 - P dx1^dx3; satisfies w ^ eta = w(X) dx1^dx2^dx3."""
    x2 = Poly.var(3, DU)
    return DiffForm(3, 2, {(0, 1): ode.Q, (1, 2): x2 * ode.Q, (0, 2): -ode.P})


# -- verification and classification ------------------------------------------

@dataclass
class FlagReport:
    tangency_ok: bool
    integrable_ok: bool
    ode_shape: bool
    ode: SecondOrderODE | None
    vf_reduced: bool
    vf_content: Poly | None
    form_reduced: bool
    form_content: Poly | None
    sing_vf: Ideal | None
    sing_form: Ideal | None
    sing_form_dim: int | None
    inclusion_ok: bool | None
    classification: Classification
    potential: Poly | None = None
    consistency_ok: bool = True
    notes: list[Note] = field(default_factory=list)

    @property
    def is_flag(self) -> bool:
        return self.tangency_ok and self.integrable_ok

    @property
    def ok(self) -> bool:
        """Every check passed: an ODE flag with Sing(w) inside Sing(X)."""
        return self.is_flag and self.ode_shape and self.inclusion_ok is True


@dataclass(frozen=True)
class ClassReport:
    kind: Classification
    sing_dimension: int
    potential: Poly | None
    notes: tuple[Note, ...]


def _dispatch(w: DiffForm, sing_form: Ideal) -> ClassReport:
    dim = dimension(sing_form)
    notes: list[Note] = []
    pot = None
    if dim < 0:
        kind = Classification.NONSINGULAR_F2
        notes.append(Note("one-parameter-reduction",
                          "reducible to a one-parameter family of first-order ODEs"))
    elif dim == 0:
        kind = Classification.ISOLATED_SING
        notes.append(Note("implicit-first-order",
                          "an implicit first-order reduction F(u,u',t)=0 exists (existence only)"))
        g, comps = content(w)
        if is_closed(w):
            pot = potential(w)
        elif not g.is_constant and is_closed(DiffForm.one_form(comps)):
            pot = potential(DiffForm.one_form(comps))
            notes.append(Note("integrating-factor", f"w = ({g}) dF after removing the common factor"))
        if pot is not None:
            notes.append(Note("potential-found", f"first integral F = {pot}"))
    elif dim == 1 and w.nvars == 3:
        kind = Classification.CODIM_2
        notes.append(Note("no-reduction", "codimension-2 singular set: no first-order reduction applies"))
    else:
        raise ConsistencyError(f"singular set of dimension {dim} after content removal")
    return ClassReport(kind, dim, pot, tuple(notes))


def verify_flag(X: VectorField, w: DiffForm) -> FlagReport:
    """Check tangency, integrability, reducedness, singular sets and classify."""
    if w.degree != 1:
        raise ValueError("the codimension-one foliation must be given by a 1-form")
    if X.nvars != w.nvars:
        raise DimensionMismatch(f"{X.nvars} vs {w.nvars} variables")
    n = X.nvars
    notes: list[Note] = []
    tangency = evaluate_on(w, X).is_zero
    integrable = is_integrable(w)
    if not tangency:
        notes.append(Note("not-tangent", "w(X) is not identically zero"))
    if not integrable:
        notes.append(Note("not-integrable", "w ^ dw is not identically zero"))
    ode = field_to_ode(X) if n == 3 else None

    vf_content = form_content = sing_vf = sing_form = None
    if X.is_zero:
        notes.append(Note("zero-field", "the vector field vanishes identically"))
    else:
        vf_content, comps = content(X)
        sing_vf = Ideal(comps)
        if not vf_content.is_constant:
            notes.append(Note("vf-content", f"common factor {vf_content} removed from the field"))
    if w.is_zero:
        notes.append(Note("zero-form", "the 1-form vanishes identically"))
    else:
        form_content, comps = content(w)
        sing_form = Ideal(comps)
        if not form_content.is_constant:
            notes.append(Note("form-content", f"common factor {form_content} removed from the form"))

    inclusion = None
    if sing_vf is not None and sing_form is not None:
        inclusion = variety_included(sing_form, sing_vf)
    sing_dim = dimension(sing_form) if sing_form is not None else None

    report = FlagReport(
        tangency_ok=tangency,
        integrable_ok=integrable,
        ode_shape=ode is not None,
        ode=ode,
        vf_reduced=vf_content is not None and vf_content.is_constant,
        vf_content=vf_content,
        form_reduced=form_content is not None and form_content.is_constant,
        form_content=form_content,
        sing_vf=sing_vf,
        sing_form=sing_form,
        sing_form_dim=sing_dim,
        inclusion_ok=inclusion,
        classification=Classification.REJECTED,
        notes=notes,
    )
    if not (tangency and integrable) or sing_form is None or sing_vf is None:
        return report
    if ode is None:
        msg = "plain 2-flag"
        msg += "; Sing(F2) ⊄ Sing(F1)" if inclusion is False else "; the field is not of ODE shape"
        notes.append(Note("plain-flag", msg))
        return report
    if ode.was_reduced:
        notes.append(Note("ode-reduced", f"common factor {ode.removed_factor} removed from P and Q"))
    if inclusion is False:
        report.consistency_ok = False
        notes.append(Note("inclusion-violated",
                          "ODE flag with Sing(F2) ⊄ Sing(F1)"))
    cls = _dispatch(w, sing_form)
    report.classification = cls.kind
    report.potential = cls.potential
    notes.extend(cls.notes)
    return report


def classify(X: VectorField, w: DiffForm) -> ClassReport:
    """Dispatch an ODE flag on the dimension of Sing(w)."""
    if X.nvars != 3 or w.nvars != 3:
        raise ValueError("classification is defined for ODE flags in 3 variables")
    if not evaluate_on(w, X).is_zero or not is_integrable(w):
        raise ValueError("not a flag: tangency or integrability fails")
    if field_to_ode(X) is None:
        raise ValueError("not an ODE flag: the field does not have the shape (x2*Q, P, Q)")
    return _dispatch(w, singular_ideal(w))


# -- local analysis at the origin ---------------------------------------------

def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, dd = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(dd)
    if rn * rn == n and rd * rd == dd:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class LocalSpectrum:
    """Nonzero eigenvalue pair of the linear part at the origin.

    ``a`` and ``b`` are the gradients of P and Q at 0 (``None`` when the
    spectrum was read off a general field).  The pair is
    (trace +- sqrt(discriminant)) / 2.
    """

    a: tuple[Fraction, ...] | None
    b: tuple[Fraction, ...] | None
    trace: Fraction
    det: Fraction
    discriminant: Fraction
    ratio_is_minus_one: bool

    def eigenvalues(self) -> tuple[Fraction, Fraction] | None:
        """The pair as exact rationals, or ``None`` if the root is irrational."""
        r = _rational_sqrt(self.discriminant)
        if r is None:
            return None
        return ((self.trace + r) / 2, (self.trace - r) / 2)

    def eigenvalue_text(self) -> str:
        ev = self.eigenvalues()
        if ev is not None:
            return f"{ev[0]}, {ev[1]}"
        return f"({self.trace} +- sqrt({self.discriminant}))/2"


def _gradient_at_zero(p: Poly) -> tuple[Fraction, ...]:
    n = p.nvars
    out = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        out.append(p.terms.get(tuple(e), Fraction(0)))
    return tuple(out)


def linear_analysis(P: Poly, Q: Poly, n: int | None = None) -> LocalSpectrum:
    """Spectrum of the linear part of the order-(n-1) ODE field at 0."""
    n = P.nvars if n is None else n
    if P.nvars != n or Q.nvars != n:
        raise DimensionMismatch(f"P and Q must live in {n} variables")
    if n < 3:
        raise ValueError("need at least 3 variables")
    if P.constant_term or Q.constant_term:
        raise ValueError("P(0) and Q(0) must vanish")
    a, b = _gradient_at_zero(P), _gradient_at_zero(Q)
    an1, an = a[n - 2], a[n - 1]
    bn1, bn = b[n - 2], b[n - 1]
    return LocalSpectrum(
        a=a,
        b=b,
        trace=an1 + bn,
        det=an1 * bn - an * bn1,
        discriminant=an1**2 - 2 * an1 * bn + 4 * an * bn1 + bn**2,
        ratio_is_minus_one=an1 == -bn,
    )


def linear_part(X: VectorField) -> list[list[Fraction]]:
    """Jacobian matrix of X at the origin."""
    if any(c.constant_term for c in X.components):
        raise ValueError("the field does not vanish at the origin")
    return [list(_gradient_at_zero(c)) for c in X.components]


def characteristic_coefficients(M: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """c_0..c_n with det(t I - M) = sum c_k t^(n-k), by Faddeev-LeVerrier."""
    n = len(M)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M (M_{k-1} + c_{k-1} I)
        prev = [[Mk[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(Mk[i][i] for i in range(n)) / k)
    return coeffs


def field_spectrum(X: VectorField) -> LocalSpectrum:
    """Nonzero eigenvalue pair of a field whose linear part has rank <= 2."""
    c = characteristic_coefficients(linear_part(X))
    if any(c[3:]):
        raise ValueError("linear part has more than two nonzero eigenvalues")
    trace, det = -c[1], c[2] if len(c) > 2 else Fraction(0)
    return LocalSpectrum(
        a=None,
        b=None,
        trace=trace,
        det=det,
        discriminant=trace**2 - 4 * det,
        ratio_is_minus_one=det != 0 and trace == 0,
    )


def normal_form_fixture() -> tuple[VectorField, DiffForm]:
    """Y = -x1 d/dx1 + x2 d/dx2 + x1 x2 d/dx3 and its integrable partner."""
    x1, x2, x3 = Poly.gens(3)
    Y = VectorField([-x1, x2, x1 * x2])
    Omega = DiffForm.one_form([-x2 * (x1 * x2 - x3), x1 * x3, -x1 * x2])
    return Y, Omega
