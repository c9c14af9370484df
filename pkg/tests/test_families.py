import itertools
from fractions import Fraction

import pytest
import sympy as sp

from odeflags.corpus import load_corpus
from odeflags.exterior import evaluate_on, is_integrable
from odeflags.families import compose_with_product, emden_fowler, linear_in_time, log_type, three_partners
from odeflags.flags import verify_flag
from odeflags.polyring import Poly
from randgen import syms

x1, x2, x3 = Poly.gens(3)
one = Poly.const(3, 1)
X1, X2, X3 = syms(3)


def _flag_identities(A, X):
    """(w(X), w ^ dw) for sympy expressions in x1, x2, x3."""
    xs = (X1, X2, X3)
    curl = [
        sp.diff(A[2], xs[1]) - sp.diff(A[1], xs[2]),
        sp.diff(A[0], xs[2]) - sp.diff(A[2], xs[0]),
        sp.diff(A[1], xs[0]) - sp.diff(A[0], xs[1]),
    ]
    tangency = sp.simplify(sum(a * f for a, f in zip(A, X)))
    frob = sp.simplify(sum(a * c for a, c in zip(A, curl)))
    return tangency, frob


def test_emden_fowler_laurent_form_is_a_flag_symbolically():
    k, m, n = sp.symbols("k m n")
    A = [
        -(n - 1) * k * X1**n * X3 - (m + n + 1) * X2 * X3**(-m),
        (n - 1) * X2 * X3**(1 - m) + (m + 2) * X1 * X3**(-m),
        -k * (m + 2) * X1**(n + 1) + (m + n + 1) * X2**2 * X3**(-m),
    ]
    X = [X2 * X3**(-m), k * X1**n, X3**(-m)]
    for kv, mv, nv in [(1, -1, 2), (1, 1, -2), (3, 2, 3), (-2, -3, -1)]:
        sub = {k: kv, m: mv, n: nv}
        t, f = _flag_identities([a.subs(sub) for a in A], [c.subs(sub) for c in X])
        assert t == 0 and f == 0


def test_emden_fowler_builder():
    ode, X, w = emden_fowler(1, -1, 2)
    assert (ode.P, ode.Q) == (x1**2, x3)
    assert X.components == (x2 * x3, x1**2, x3)
    assert w.components() == [-x1**2 * x3 - 2 * x2 * x3, x1 * x3 + x2 * x3**2, -x1**3 + 2 * x2**2 * x3]
    ode, X, w = emden_fowler(1, 1, -2)
    assert (ode.P, ode.Q) == (x3, x1**2)
    assert w.components() == [3 * x3**2, 3 * x1**2 * (x1 - x2 * x3), -3 * x1 * x3]


def test_emden_fowler_parameter_grid():
    for k, m, n in itertools.product([1, -3, Fraction(1, 2)], [-3, -2, -1, 1, 2, 3], [-3, -2, -1, 1, 2, 3]):
        try:
            _, X, w = emden_fowler(k, m, n)
        except ValueError:
            assert (m, n) == (-2, 1)  # all coefficients of the form vanish
            continue
        assert evaluate_on(w, X).is_zero and is_integrable(w)


def test_emden_fowler_errors():
    for args in [(0, 1, 1), (1, 0, 2), (1, 2, 0), (1, 1.5, 2)]:
        with pytest.raises(ValueError):
            emden_fowler(*args)


def test_emden_fowler_inclusion_counterexample():
    """Sing(w) contains the x3-axis; the field's singular set is the x2-axis."""
    _, X, w = emden_fowler(1, -1, 2)
    for t in (1, 2, -5):
        assert all(A.eval([0, 0, t]) == 0 for A in w.components())
        assert any(f.eval([0, 0, t]) != 0 for f in X.components)
    assert verify_flag(X, w).inclusion_ok is False


def test_log_type_with_arbitrary_function():
    f = sp.Function("f")
    fg = f(X1, X2 * X3)
    X = [X1 * X2 * X3, -X2 * fg, X1 * X3]
    A = [fg - X1, X1 * X3, X1 * X2]
    t, frob = _flag_identities(A, X)
    assert t == 0 and frob == 0


def test_log_type_builder():
    x, y = Poly.gens(2)
    assert compose_with_product(x + y * (2 * x + 1)) == x1 + x2 * x3 * (2 * x1 + 1)
    for F in (x + y, x + y * (2 * x + 1), x**2 - 3 * y**2 + x * y):
        _, X, w = log_type(F)
        r = verify_flag(X, w)
        assert r.tangency_ok and r.integrable_ok and r.ode_shape
    with pytest.raises(ValueError):
        compose_with_product(x1)


def test_linear_in_time_as_printed_and_corrected():
    a, b, c = (sp.Function(s)(X3) for s in "abc")
    X = [X2 * a, -(b * X2 + c * X1), a]
    A3 = a * X2**2 + b * X1 * X2 + c * X1**2
    printed = [-a * X2, a, A3]
    corrected = [-a * X2, a * X1, A3]
    t, _ = _flag_identities(printed, X)
    assert sp.factor(t - a * (X1 - 1) * (b * X2 + c * X1)) == 0
    assert t != 0
    t, frob = _flag_identities(corrected, X)
    assert t == 0 and frob == 0


def test_linear_in_time_builder():
    _, X, w = linear_in_time(one, x3, one)
    assert evaluate_on(w, X).is_zero and is_integrable(w)
    _, X, w = linear_in_time(one, x3, one, corrected=False)
    assert evaluate_on(w, X) == (x1 - 1) * (x2 * x3 + x1)
    assert not is_integrable(w)
    with pytest.raises(ValueError):
        linear_in_time(x1, one, one)


def test_three_partners():
    X, ws = three_partners()
    assert X.components == (x2, one, one)
    for w in ws:
        assert evaluate_on(w, X).is_zero


def test_corpus_matches_builders():
    by_name = {fx.name: fx for fx in load_corpus()}
    x, y = Poly.gens(2)
    expected = {
        "emden-fowler-u2-over-t": emden_fowler(1, -1, 2),
        "emden-fowler-t-over-u2": emden_fowler(1, 1, -2),
        "log-type-linear": log_type(x + y),
        "log-type-mixed": log_type(x + y * (2 * x + 1)),
        "linear-time-varying": linear_in_time(one, x3, one),
        "linear-constant": linear_in_time(one, one, Poly.zero(3)),
        "linear-time-varying-as-printed": linear_in_time(one, x3, one, corrected=False),
    }
    for name, (_, X, w) in expected.items():
        assert by_name[name].field == X, name
        assert by_name[name].form == w, name
