import random

import pytest
import sympy as sp

from odeflags.ideals import (
    BudgetExceeded,
    Ideal,
    buchberger,
    current_budget,
    dimension,
    groebner,
    member,
    normal_form,
    radical_member,
    s_polynomial,
    step_budget,
    variety_included,
)
from odeflags.polyring import DimensionMismatch, Poly
from oracles import member_by_linear_algebra, vanishes_on_axes
from randgen import rand_nonzero_poly, rand_poly, syms, to_sympy, from_sympy

x1, x2, x3 = Poly.gens(3)
one = Poly.const(3, 1)
AXES = Ideal([x2 * x3, x1 * x3, x1 * x2])


def test_unit_ideal():
    assert buchberger([x1 * x2 - 1, x1**2]) == [one]
    assert Ideal([x1 * x2 - 1, x1**2]).is_unit


def test_zero_ideal():
    I = Ideal([Poly.zero(3)])
    assert I.is_zero and I.basis() == ()
    assert dimension(I) == 3
    assert member(Poly.zero(3), I) and not member(x1, I)


def test_s_polynomial_cancels_leading_terms():
    f, g = x1**2 + x2, x1 * x2 + x3
    s = s_polynomial(f, g)
    assert s.leading_monomial != (2, 1, 0)


def test_reduced_basis_against_sympy():
    rng = random.Random(11)
    xs = syms(3)
    for _ in range(40):
        gens = [rand_nonzero_poly(rng, 3, deg=2, nterms=3) for _ in range(rng.randint(1, 3))]
        ours = buchberger(gens)
        theirs = sp.groebner([to_sympy(g) for g in gens], *xs, order="grevlex")
        theirs = sorted((from_sympy(g, 3).monic() for g in theirs.exprs), key=str)
        assert sorted(ours, key=str) == theirs


def test_basis_is_cached_and_groebner_returns_basis():
    I = Ideal([x1**2 - x2, x1 * x2 - 1])
    J = groebner(I)
    assert J.generators == I.basis() and J.basis() is I.basis()


def test_normal_form_of_members_is_zero():
    rng = random.Random(5)
    for _ in range(30):
        gens = [rand_nonzero_poly(rng, 3, deg=2, nterms=2) for _ in range(2)]
        I = Ideal(gens)
        f = sum((rand_poly(rng, 3, deg=2, nterms=2) * g for g in gens), Poly.zero(3))
        assert normal_form(f, I.basis()).is_zero
        assert f in I


def test_membership_against_linear_algebra():
    rng = random.Random(21)
    for _ in range(40):
        gens = [rand_nonzero_poly(rng, 3, deg=2, nterms=2) for _ in range(rng.randint(1, 2))]
        f = rand_poly(rng, 3, deg=3, nterms=3)
        if rng.random() < 0.5:
            f = sum((rand_poly(rng, 3, deg=1, nterms=2) * g for g in gens), Poly.zero(3))
        assert member(f, Ideal(gens)) == member_by_linear_algebra(f, gens, 4)


def test_axes_ideal():
    assert dimension(AXES) == 1
    assert not member(x1, AXES)
    assert not radical_member(x1, AXES)
    assert radical_member(x2**2 * x3 - 2 * x1 * x2, AXES)
    assert radical_member(x1 * x2 * x3, AXES)


def test_radical_member_matches_axis_witness():
    rng = random.Random(8)
    for _ in range(40):
        f = rand_poly(rng, 3, deg=3, nterms=3)
        assert radical_member(f, AXES) == vanishes_on_axes(f)


def test_radical_is_larger_than_ideal():
    I = Ideal([x1**2])
    assert not member(x1, I) and radical_member(x1, I)


def test_variety_inclusion():
    origin = Ideal([x1, x2, x3])
    assert variety_included(origin, AXES)
    assert not variety_included(AXES, origin)
    assert variety_included(Ideal([one]), origin)  # empty set is inside everything
    with pytest.raises(DimensionMismatch):
        variety_included(origin, Ideal(Poly.gens(2)))


def test_dimension_examples():
    assert dimension(Ideal([x1, x2, x3])) == 0
    assert dimension(Ideal([one])) == -1
    assert dimension(Ideal([x1])) == 2
    assert dimension(Ideal([x1 * x2])) == 2
    assert dimension(Ideal([x1, x2 * x3])) == 1


def test_budget():
    assert current_budget() == 10**6
    gens = [x1**2 + x2 * x3, x1 * x2 + x3**2, x2**2 + x1 * x3]
    with pytest.raises(BudgetExceeded):
        buchberger(gens, budget=1)
    with step_budget(1):
        assert current_budget() == 1
        with pytest.raises(BudgetExceeded):
            Ideal(gens).basis()
    assert current_budget() == 10**6
    with pytest.raises(ValueError):
        with step_budget(0):
            pass
