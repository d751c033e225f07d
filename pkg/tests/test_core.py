import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deforma.core import Grid, PolyGauss, Profile, bessel_j, bessel_j_scaled, gamma, lgamma, parse_expression
from deforma.core.expr import FUNCTIONS
from deforma.errors import DomainError, ExpressionError, PoleError, RangeError, UnknownIdentifierError


@pytest.mark.parametrize("x, expected", [(1.0, 1.0), (1.5, 0.886226925452758), (5.0, 24.0)])
def test_gamma_examples(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-12)


@given(st.floats(0.05, 29.5))
def test_gamma_matches_mpmath(x):
    assert gamma(x) == pytest.approx(float(mp.gamma(x)), rel=1e-12)


@given(st.floats(0.1, 20))
def test_gamma_recurrence(x):
    assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)


def test_gamma_reflection_and_poles():
    assert gamma(-0.5) == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-12)
    assert lgamma(10.0) == pytest.approx(math.log(362880.0), rel=1e-13)
    for x in (0.0, -1.0, -4.0):
        with pytest.raises(PoleError):
            gamma(x)


@pytest.mark.parametrize("nu, x, expected", [
    (0.0, 0.0, 1.0),
    (0.0, 1.0, 0.7651976865579666),
    (0.5, math.pi / 2, 2 / math.pi),
])
def test_bessel_examples(nu, x, expected):
    assert bessel_j(nu, x) == pytest.approx(expected, rel=1e-10)


@given(st.floats(0.5, 3.0), st.floats(0.5, 10.0))
def test_bessel_recurrence(nu, x):
    lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x)
    assert lhs == pytest.approx(2 * nu / x * bessel_j(nu, x), abs=1e-10)


@pytest.mark.parametrize("x", [0.3, 2.0, 7.5])
def test_bessel_half_integer_closed_forms(x):
    assert bessel_j(0.5, x) == pytest.approx(math.sqrt(2 / (math.pi * x)) * math.sin(x), rel=1e-12)
    assert bessel_j(-0.5, x) == pytest.approx(math.sqrt(2 / (math.pi * x)) * math.cos(x), abs=1e-12)


@pytest.mark.parametrize("nu", [-0.25, 0.0, 0.75, 2.0])
def test_bessel_whole_range_against_mpmath(nu):
    # the alternating series cancels by ~20 digits at x = 50
    for x in np.linspace(0.5, 50, 23):
        assert bessel_j(nu, x) == pytest.approx(float(mp.besselj(nu, x)), abs=1e-11)


def test_bessel_scaled_is_finite_at_zero():
    assert bessel_j_scaled(-0.5, 0.0) == pytest.approx(2 ** 0.5 / math.gamma(0.5), rel=1e-14)


def test_bessel_guards():
    with pytest.raises(RangeError):
        bessel_j(0.0, 50.5)
    with pytest.raises(DomainError):
        bessel_j(0.0, -1.0)
    with pytest.raises(DomainError):
        bessel_j(-1.0, 1.0)


# -- PolyGauss ---------------------------------------------------------------------

def test_polygauss_examples():
    g = PolyGauss.gaussian()
    xi = PolyGauss.from_rationals([0, 1])
    assert g.differentiate().exact_equal(PolyGauss.from_rationals([0, -1]))
    assert xi.multiply_by_xi().exact_equal(PolyGauss.from_rationals([0, 0, 1]))
    assert xi.reflect().exact_equal(PolyGauss.from_rationals([0, -1]))


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=8))
def test_polygauss_second_derivative_exact(ints):
    p = PolyGauss.from_rationals(ints)
    got = p.differentiate().differentiate()
    # (q e)'' = (q'' - 2 x q' + (x^2 - 1) q) e, in exact rationals
    q = [Fraction(v) for v in ints] + [Fraction(0)] * 2
    ref = []
    for k in range(len(q)):
        c = (k + 2) * (k + 1) * q[k + 2] if k + 2 < len(q) else 0
        c -= 2 * k * q[k] + q[k]
        if k >= 2:
            c += q[k - 2]
        ref.append(c)
    ref.append(q[-2] if len(q) >= 2 else 0)
    ref.append(q[-1])
    assert got.exact_equal(PolyGauss.from_rationals(ref))


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=8), st.floats(-3, 3))
def test_polygauss_derivative_matches_numeric(ints, x):
    p = PolyGauss.from_rationals(ints)
    h = 1e-5
    fd = (p(x + h, 1.0) - p(x - h, 1.0)) / (2 * h)
    assert p.differentiate()(x, 1.0) == pytest.approx(fd, abs=1e-6 * (1 + abs(fd)))


def test_polygauss_divide_odd_part():
    p = PolyGauss.from_rationals([3, 2, 0, 5])
    assert p.divide_odd_part_by_xi().exact_equal(PolyGauss.from_rationals([2, 0, 5]))


def test_polygauss_add_needs_same_scale():
    with pytest.raises(DomainError):
        PolyGauss.gaussian() + PolyGauss.gaussian().rescaled(2.0)


# -- expressions ------------------------------------------------------------------

@pytest.mark.parametrize("text, x, expected", [
    ("exp(-x^2/2)", 0.0, 1.0),
    ("x^3", 2.0, 8.0),
    ("sin(x)/x", 1.0, 0.8414709848078965),
    ("-x^2", 3.0, -9.0),
    ("2^-1", 0.0, 0.5),
    ("abs(x) + sqrt(4)", -1.5, 3.5),
])
def test_parse_examples(text, x, expected):
    assert parse_expression(text)(x) == pytest.approx(expected, rel=1e-15)


def test_parse_vectorised():
    f = parse_expression("x*cos(x)")
    x = np.linspace(-1, 1, 7)
    np.testing.assert_allclose(f(x), x * np.cos(x), rtol=0, atol=0)


@pytest.mark.parametrize("text, pos", [("x^^3", 2), ("(x+1", 4), ("3 $ x", 2), ("sin x", 4)])
def test_parse_error_positions(text, pos):
    with pytest.raises(ExpressionError) as exc:
        parse_expression(text)
    assert exc.value.position == pos


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError):
        parse_expression("tan(x)")
    with pytest.raises(UnknownIdentifierError):
        parse_expression("y + 1")


def test_functions_table_is_minimal():
    assert set(FUNCTIONS) == {"exp", "sin", "cos", "sqrt", "abs"}


# -- grid / profile ------------------------------------------------------------------

def test_grid_and_profile_are_immutable():
    g = Grid.symmetric(2.0, 5)
    assert g.spacing == 1.0
    prof = Profile(g, np.arange(5.0), {"k": 1})
    with pytest.raises(ValueError):
        prof.values[0] = 3
    with pytest.raises(TypeError):
        prof.meta["k"] = 2
    with pytest.raises(DomainError):
        Grid(np.array([0.0, 1.0, 3.0]))
