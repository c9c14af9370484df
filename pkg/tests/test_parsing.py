import random
from fractions import Fraction

import pytest

from odeflags.corpus import load_corpus
from odeflags.exterior import format_field, format_form
from odeflags.families import emden_fowler
from odeflags.parsing import ParseError, Power, Product, parse_expr, parse_field, parse_form, parse_ode, parse_poly, tokenize
from odeflags.polyring import Poly, format_poly
from randgen import rand_field, rand_form, rand_poly

x1, x2, x3 = Poly.gens(3)
one = Poly.const(3, 1)


def _err(fn, *args) -> ParseError:
    with pytest.raises(ParseError) as info:
        fn(*args)
    return info.value


def test_basic_polys():
    assert parse_poly("x2^2 + x3", 3) == x2**2 + x3
    assert parse_poly("1/2 * x3^2", 3) == x3**2 * Fraction(1, 2)
    assert parse_poly("-x1^2", 3) == -(x1**2)  # ^ binds tighter than unary minus
    assert parse_poly("2*x1 - 3*(x2 + 1)", 3) == 2 * x1 - 3 * x2 - 3
    assert parse_poly("(x1 + x2)^2", 3) == x1**2 + 2 * x1 * x2 + x2**2
    assert parse_poly("x1/2", 3) == x1 * Fraction(1, 2)
    assert parse_poly("u*u' + t", 3) == x1 * x2 + x3


def test_precedence_shapes_ast():
    e = parse_expr("2*x1^3", 3)
    assert isinstance(e, Product) and isinstance(e.factors[1][1], Power)


def test_error_kinds_and_positions():
    e = _err(parse_poly, "x1^(-1)", 3)
    assert e.kind == "negative-exponent" and (e.line, e.col) == (1, 4)
    e = _err(parse_poly, "x1 + x4", 3)
    assert e.kind == "unknown-variable" and e.col == 6
    e = _err(parse_poly, "x1 + $", 3)
    assert e.kind == "lexical" and e.col == 6
    e = _err(parse_poly, "x1 +\n  * x2", 3)
    assert e.kind == "syntax" and (e.line, e.col) == (2, 3)
    e = _err(parse_poly, "(x1 + x2", 3)
    assert e.kind == "syntax"
    e = _err(parse_poly, "x1 / x2", 3)
    assert e.kind == "division"
    e = _err(parse_poly, "x1 / 0", 3)
    assert e.kind == "zero-denominator"
    e = _err(parse_poly, "u + 1", 4)
    assert e.kind == "unknown-variable"


def test_implicit_multiplication_rejected():
    e = _err(parse_form, "x2x3 dx1 + x1x3 dx2 - 2x1x2 dx3", 3)
    assert "implicit multiplication" in str(e)
    for src in ("2x1", "2 x1", "x1 x2", "x1(x2)", "x1^2 x2"):
        assert "implicit multiplication" in str(_err(parse_poly, src, 3)), src


def test_forms():
    w = parse_form("x2*x3 dx1 + x1*x3 dx2 - 2*x1*x2 dx3", 3)
    assert w.components() == [x2 * x3, x1 * x3, -2 * x1 * x2]
    assert parse_form("dx1 - x2*dx3", 3).components() == [one, Poly.zero(3), -x2]
    assert parse_form("-(x2^2 + x3) dx1 + dx2", 3).components() == [-(x2**2 + x3), one, Poly.zero(3)]
    assert parse_form("0", 3).is_zero
    e = _err(parse_form, "dx1 + dx1", 3)
    assert e.kind == "duplicate-basis" and e.col == 7
    assert _err(parse_form, "x1 dx4", 3).kind == "unknown-variable"
    assert _err(parse_form, "x1 + x2", 3).kind == "syntax"


def test_fields():
    X = parse_field("[x1*x2, -(x2^2+x3), x1]", 3)
    assert X.components == (x1 * x2, -(x2**2 + x3), x1)
    assert parse_field("x2 d1 + d2", 3).components == (x2, one, Poly.zero(3))
    assert _err(parse_field, "[x1, x2]", 3).kind == "syntax"


def test_odes():
    ode = parse_ode("u'' = -(u'^2 + t)/(u)")
    assert (ode.P, ode.Q) == (-(x2**2 + x3), x1)
    ode = parse_ode("u'' = (u^2)/(t)")
    ref, _, _ = emden_fowler(1, -1, 2)
    assert (ode.P, ode.Q) == (ref.P, ref.Q)
    assert parse_ode("u'' = u").Q == one
    assert _err(parse_ode, "u'' = (u)/(0)").kind == "zero-denominator"
    assert _err(parse_ode, "u' = u").kind == "missing-head"
    assert _err(parse_ode, "(u)/(t)").kind == "missing-head"


def test_tokenize_tracks_lines():
    toks = tokenize("x1 +\n 3")
    assert [(t.span.line, t.span.col) for t in toks[:3]] == [(1, 1), (1, 4), (2, 2)]


def test_random_poly_round_trip():
    rng = random.Random(11)
    for i in range(500):
        n = rng.randint(1, 4)
        p = rand_poly(rng, n, deg=rng.randint(0, 4), nterms=rng.randint(0, 5), fractions=True)
        assert parse_poly(format_poly(p), n) == p, format_poly(p)


def test_random_form_and_field_round_trip():
    rng = random.Random(12)
    for _ in range(100):
        n = rng.randint(2, 4)
        w = rand_form(rng, n, 1)
        assert parse_form(format_form(w), n) == w
        X = rand_field(rng, n)
        assert parse_field(format_field(X), n) == X


def test_corpus_round_trip():
    for fx in load_corpus():
        src = fx.source
        w = parse_form(src["form"], 3)
        assert w == fx.form and parse_form(format_form(w), 3) == w
        if "field" in src:
            X = parse_field(src["field"], 3)
            assert parse_field(format_field(X), 3) == X
        if "ode" in src:
            ode = parse_ode(src["ode"])
            again = parse_ode(f"u'' = ({format_poly(ode.P)})/({format_poly(ode.Q)})")
            assert (again.P, again.Q) == (ode.P, ode.Q)
        assert parse_field(format_field(fx.field), 3) == fx.field
