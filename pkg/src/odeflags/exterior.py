"""Differential forms and vector fields with polynomial coefficients."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .polyring import DimensionMismatch, Poly, format_poly, gcd_list

Index = tuple[int, ...]


def _sort_sign(idx: Sequence[int]) -> tuple[int, Index]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    if len(set(idx)) != len(idx):
        return 0, ()
    idx = list(idx)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class DiffForm:
    """A homogeneous k-form  sum_I a_I dx_I  on Q[x1..xn].

    Multi-indices are 0-based and stored strictly increasing; construction
    from arbitrary index tuples applies the permutation sign and drops
    repeated indices.
    """

    __slots__ = ("nvars", "degree", "coeffs")

    def __init__(self, nvars: int, degree: int, coeffs: Mapping[Sequence[int], Poly] | None = None):
        if degree < 0:
            raise ValueError("form degree must be nonnegative")
        self.nvars = nvars
        self.degree = degree
        out: dict[Index, Poly] = {}
        for idx, p in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not match degree {degree}")
            if any(not 0 <= i < nvars for i in idx):
                raise IndexError(f"index {idx} out of range for {nvars} variables")
            if p.nvars != nvars:
                raise DimensionMismatch(f"coefficient lives in {p.nvars} variables, expected {nvars}")
            sign, key = _sort_sign(idx)
            if not sign or not p:
                continue
            acc = out.get(key)
            acc = p.scale(sign) if acc is None else acc + p.scale(sign)
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        self.coeffs = out

    @classmethod
    def scalar(cls, p: Poly) -> DiffForm:
        return cls(p.nvars, 0, {(): p})

    @classmethod
    def one_form(cls, coeffs: Sequence[Poly]) -> DiffForm:
        """The 1-form  A_1 dx_1 + ... + A_n dx_n."""
        n = len(coeffs)
        return cls(n, 1, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def basis(cls, nvars: int, *idx: int) -> DiffForm:
        return cls(nvars, len(idx), {idx: Poly.const(nvars, 1)})

    @classmethod
    def zero(cls, nvars: int, degree: int) -> DiffForm:
        return cls(nvars, degree)

    def __getitem__(self, idx) -> Poly:
        if isinstance(idx, int):
            idx = (idx,)
        sign, key = _sort_sign(tuple(idx))
        p = self.coeffs.get(key)
        if p is None or not sign:
            return Poly.zero(self.nvars)
        return p if sign > 0 else -p

    def components(self) -> list[Poly]:
        """Coefficients A_1..A_n of a 1-form, zeros included."""
        if self.degree != 1:
            raise ValueError("components() is defined for 1-forms")
        return [self[(i,)] for i in range(self.nvars)]

    def as_poly(self) -> Poly:
        if self.degree != 0:
            raise ValueError("only 0-forms are scalars")
        return self[()]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: DiffForm) -> None:
        if not isinstance(other, DiffForm):
            raise TypeError("expected a DiffForm")
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other: DiffForm) -> DiffForm:
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        coeffs = dict(self.coeffs)
        for k, p in other.coeffs.items():
            coeffs[k] = coeffs[k] + p if k in coeffs else p
        return DiffForm(self.nvars, self.degree, coeffs)

    def __neg__(self) -> DiffForm:
        return self.scale(-1)

    def __sub__(self, other: DiffForm) -> DiffForm:
        return self + (-other)

    def scale(self, p) -> DiffForm:
        """Multiply every coefficient by a polynomial or rational."""
        return DiffForm(self.nvars, self.degree, {k: c * p for k, c in self.coeffs.items()})

    def __mul__(self, p) -> DiffForm:
        if isinstance(p, DiffForm):
            return wedge(self, p)
        return self.scale(p)

    __rmul__ = scale

    def __xor__(self, other: DiffForm) -> DiffForm:
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffForm):
            return (self.nvars, self.degree, self.coeffs) == (other.nvars, other.degree, other.coeffs)
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"DiffForm({str(self)!r}, nvars={self.nvars}, degree={self.degree})"


class VectorField:
    """A polynomial vector field  f_1 d/dx_1 + ... + f_n d/dx_n."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Poly]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        n = comps[0].nvars
        if len(comps) != n:
            raise DimensionMismatch(f"{len(comps)} components in {n} variables")
        if any(c.nvars != n for c in comps):
            raise DimensionMismatch("components live in different rings")
        self.components = comps

    @property
    def nvars(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    @property
    def is_zero(self) -> bool:
        return not any(self.components)

    @property
    def reduced(self) -> bool:
        """True when the nonzero components share no nonconstant factor."""
        if self.is_zero:
            return False
        return gcd_list(self.components).is_constant

    def scale(self, p) -> VectorField:
        return VectorField(c * p for c in self.components)

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if isinstance(other, VectorField):
            return self.components == other.components
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.components)

    def __str__(self) -> str:
        return format_field(self)

    def __repr__(self) -> str:
        return f"VectorField({str(self)!r})"


# -- operations -----------------------------------------------------------

def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    """Exterior product; the result has degree deg a + deg b."""
    a._check(b)
    k = a.degree + b.degree
    out: dict[Index, Poly] = {}
    if k <= a.nvars:
        for ia, pa in a.coeffs.items():
            for ib, pb in b.coeffs.items():
                sign, key = _sort_sign(ia + ib)
                if not sign:
                    continue
                term = pa * pb
                if sign < 0:
                    term = -term
                out[key] = out[key] + term if key in out else term
    return DiffForm(a.nvars, k, out)


def d(a: DiffForm | Poly) -> DiffForm:
    """Exterior derivative.  A :class:`Poly` is treated as a 0-form."""
    if isinstance(a, Poly):
        a = DiffForm.scalar(a)
    n = a.nvars
    out: dict[Index, Poly] = {}
    if a.degree < n:
        for idx, p in a.coeffs.items():
            for j in range(n):
                if j in idx:
                    continue
                dp = p.diff(j)
                if not dp:
                    continue
                sign, key = _sort_sign((j,) + idx)
                term = dp if sign > 0 else -dp
                out[key] = out[key] + term if key in out else term
    return DiffForm(n, a.degree + 1, out)


def contract(X: VectorField, a: DiffForm) -> DiffForm:
    """Interior product  i_X a, a (k-1)-form."""
    if a.degree < 1:
        raise ValueError("cannot contract a 0-form")
    if X.nvars != a.nvars:
        raise DimensionMismatch(f"{X.nvars} vs {a.nvars} variables")
    out: dict[Index, Poly] = {}
    for idx, p in a.coeffs.items():
        for r, i in enumerate(idx):
            f = X[i]
            if not f:
                continue
            term = p * f
            if r % 2:
                term = -term
            key = idx[:r] + idx[r + 1:]
            out[key] = out[key] + term if key in out else term
    return DiffForm(a.nvars, a.degree - 1, out)


def evaluate_on(w: DiffForm, X: VectorField) -> Poly:
    """w(X) for a 1-form w, as a polynomial."""
    if w.degree != 1:
        raise ValueError("w(X) needs a 1-form")
    return contract(X, w).as_poly()


def is_integrable(w: DiffForm) -> bool:
    """Frobenius test  w ^ dw == 0  for a 1-form."""
    if w.degree != 1:
        raise ValueError("integrability is tested on 1-forms")
    return wedge(w, d(w)).is_zero


def is_closed(w: DiffForm) -> bool:
    return d(w).is_zero


def field_wedge(X1: VectorField, X2: VectorField) -> dict[Index, Poly]:
    """Components  f_i g_j - f_j g_i  (i < j) of the bivector X1 ^ X2."""
    if X1.nvars != X2.nvars:
        raise DimensionMismatch(f"{X1.nvars} vs {X2.nvars} variables")
    return {
        (i, j): X1[i] * X2[j] - X1[j] * X2[i]
        for i, j in combinations(range(X1.nvars), 2)
    }


def top_coefficient(a: DiffForm) -> Poly:
    """Coefficient of dx_1 ^ ... ^ dx_n in an n-form."""
    if a.degree != a.nvars:
        raise ValueError("not a top-degree form")
    return a[tuple(range(a.nvars))]


# -- printing -------------------------------------------------------------

def _basis_name(idx: Index) -> str:
    return "^".join(f"dx{i + 1}" for i in idx)


def format_form(a: DiffForm) -> str:
    """Text like ``x2*x3 dx1 + (x2^2 + x3) dx2 - 2*x1 dx3``."""
    if a.degree == 0:
        return format_poly(a[()])
    if not a.coeffs:
        return "0"
    pieces = []
    for idx in sorted(a.coeffs):
        p = a.coeffs[idx]
        neg = p.leading_coeff < 0
        mag = -p if neg else p
        if len(mag) > 1:
            body = f"({format_poly(mag)}) {_basis_name(idx)}"
        elif mag == 1:
            body = _basis_name(idx)
        else:
            body = f"{format_poly(mag)} {_basis_name(idx)}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


def format_field(X: VectorField) -> str:
    return "[" + ", ".join(format_poly(c) for c in X.components) + "]"

