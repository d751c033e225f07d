import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deforma import dcalc
from deforma.core import PolyGauss
from deforma.core.polygauss import d_bracket_poly, dp_scale, ladder_state_raw
from deforma.errors import DomainError, RangeError, TruncationError

Ds = st.sampled_from([0.5, 1.2, 1.8])


def test_bracket_and_factorial_examples():
    assert dcalc.d_bracket(3, 1.5) == pytest.approx(3.5)
    assert dcalc.d_bracket(2, 1.5) == 2.0
    assert dcalc.d_factorial(0, 1.5) == 1.0
    assert dcalc.d_factorial(2, 1.5) == pytest.approx(3.0)
    for n in range(10):
        assert dcalc.d_factorial(n, 1.0) == pytest.approx(math.factorial(n))


@given(st.integers(0, 60), st.floats(0.05, 1.95))
def test_factorial_closed_form(n, D):
    assert dcalc.d_factorial_closed(n, D) == pytest.approx(dcalc.d_factorial(n, D), rel=1e-11)


def test_printed_factorial_fails_where_expected():
    D = 1.5
    agree = [n for n in range(12) if math.isclose(dcalc.d_factorial_printed(n, D), dcalc.d_factorial(n, D), rel_tol=1e-12)]
    assert agree == [2, 3, 4, 5]


def test_factorial_range():
    with pytest.raises(RangeError):
        dcalc.d_factorial(171, 1.0)


# -- d_D ------------------------------------------------------------------------

def test_derivative_of_monomial():
    assert dcalc.d_derivative(lambda t: t ** 3, 1.5)(1.2) == pytest.approx(5.04, abs=1e-6)


def test_derivative_of_even_function_is_ordinary():
    g = lambda t: np.exp(-t * t / 2)
    xi = np.array([-1.3, 0.4, 2.0])
    np.testing.assert_allclose(dcalc.d_derivative(g, 1.3)(xi), -xi * g(xi), atol=1e-10)


def test_d_exp_eigenfunction():
    E = dcalc.d_exp_handle(1.4, 0.8)
    assert dcalc.d_derivative(E, 1.4)(0.9) == pytest.approx(0.8 * E(0.9), rel=1e-6)


def test_d_exp_examples():
    assert dcalc.d_exp(1.5, 0.0) == 1.0
    assert dcalc.d_exp(1.0, 0.7) == pytest.approx(math.exp(0.7), rel=1e-14)
    # independent 200-term summation at 40 digits
    mp.mp.dps = 40
    D = mp.mpf("1.5")
    br = lambda n: n + (D - 1) * (1 - (-1) ** n) / 2
    term, ref = mp.mpf(1), mp.mpf(1)
    for n in range(1, 200):
        term /= br(n)
        ref += term
    assert dcalc.d_exp(1.5, 1.0, 1e-12) == pytest.approx(float(ref), rel=1e-12)


def test_polygauss_exact_path_agrees_with_fd():
    p = dcalc.eigenfunction(3, 1.3)
    xi = np.linspace(0.3, 2.5, 9)
    exact = dcalc.d_derivative(p, 1.3)(xi)
    fd = dcalc.d_derivative(p.to_handle(1.3), 1.3)(xi)
    np.testing.assert_allclose(exact, fd, atol=1e-9)


def test_derivative_at_zero_is_domain_error():
    with pytest.raises(DomainError):
        dcalc.d_derivative(lambda t: t, 1.5)(0.0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=1, max_size=6), st.lists(st.floats(-1, 1), min_size=1, max_size=6),
       Ds, st.floats(0.2, 2.0), st.sampled_from([-1, 1]))
def test_product_rule(cf, cg, D, r, sign):
    f, g = np.polynomial.Polynomial(cf), np.polynomial.Polynomial(cg)
    xi = sign * r
    lhs = dcalc.d_derivative(lambda t: f(t) * g(t), D)(xi)
    t1 = g(xi) * dcalc.d_derivative(f, D)(xi)
    t2 = dcalc.d_derivative(g, D)(xi) * f(-xi)
    t3 = g.deriv()(xi) * (f(xi) - f(-xi))
    assert lhs == pytest.approx(t1 + t2 + t3, abs=1e-8 * (1 + abs(t1) + abs(t2) + abs(t3)))


# -- D-integration ---------------------------------------------------------------------

def test_integral_of_monomial():
    assert dcalc.d_integral(lambda t: t ** 2, 1.5, 1.0) == pytest.approx(1 / 3.5, abs=1e-8)


def test_odd_integrand_gives_ordinary_antiderivative():
    F = lambda t: t * np.exp(-t * t)
    x = 0.9
    assert dcalc.d_integral(F, 1.3, x) == pytest.approx((1 - math.exp(-x * x)) / 2, abs=1e-10)


def test_fundamental_theorem():
    F = lambda t: np.cos(t) + t ** 3
    I = dcalc.d_antiderivative(F, 1.4, 2.0)
    xi = np.array([-1.5, -0.3, 0.7, 1.8])
    np.testing.assert_allclose(dcalc.d_derivative(I, 1.4)(xi), F(xi), atol=1e-7)


@pytest.mark.parametrize("m, k, D", [(1, 2, 0.8), (2, 1, 1.3), (3, 3, 1.5), (0, 2, 1.5)])
def test_integration_by_parts(m, k, D):
    lo, hi = 0.5, 2.0
    f = lambda t: t ** m
    g = lambda t: t ** k
    df = lambda t: dcalc.d_bracket(m, D) * t ** (m - 1) if m else 0 * t
    dg = lambda t: dcalc.d_bracket(k, D) * t ** (k - 1) if k else 0 * t

    def span(F):
        I = dcalc.d_antiderivative(F, D, hi)
        return I(hi) - I(lo)

    lhs = span(lambda t: g(t) * df(t))
    rhs = (f(hi) * g(hi) - f(lo) * g(lo)) - span(lambda t: dg(t) * f(-t)) \
        - span(lambda t: k * t ** max(k - 1, 0) * (f(t) - f(-t)))
    assert lhs == pytest.approx(rhs, rel=1e-6, abs=1e-6)


# -- ladders -----------------------------------------------------------------------

def test_boson_limit():
    rep = dcalc.ladder(1 + 1e-10, "q", 12)
    c = rep.commutator()
    np.testing.assert_allclose(c[:-1, :-1], np.eye(12), atol=1e-8)


@pytest.mark.parametrize("D", [0.5, 1.0, 1.5])
def test_number_consistency(D):
    rep = dcalc.ladder(D, "D", 20)
    M = 0.5 * rep.anticommutator() - 0.5 * D * np.eye(rep.dim)
    np.testing.assert_allclose(M[:-1, :-1], rep.number[:-1, :-1], atol=1e-12)


@pytest.mark.parametrize("D", [0.5, 1.0, 1.5])
def test_wigner_relations(D):
    assert max(dcalc.wigner_residuals(dcalc.ladder(D, "D", 64))) < 1e-11


def test_ladder_matrices_are_read_only():
    rep = dcalc.ladder(1.5, "D", 4)
    with pytest.raises(ValueError):
        rep.a[0, 1] = 0


def test_coherent_states():
    c = dcalc.coherent_coeffs(0, 1.5, 10)
    assert c[0] == 1 and np.all(c[1:] == 0)
    alpha, D = 0.6 + 0.3j, 1.3
    c = dcalc.coherent_coeffs(alpha, D, 40)
    rep = dcalc.ladder(D, "D", 40)
    assert np.sum(np.abs(c) ** 2) == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(rep.a @ c, alpha * c, atol=1e-10)
    with pytest.raises(TruncationError):
        dcalc.coherent_coeffs(3.0, D, 10)


# -- eigenfunctions --------------------------------------------------------------------

def test_eigenfunction_examples():
    e0 = dcalc.eigenfunction(0, 1.5)
    assert e0.exact_equal(PolyGauss.gaussian().rescaled(e0.scale))
    e1 = dcalc.eigenfunction(1, 1.5)
    assert e1.parity() == "odd"
    back = dcalc.annihilate(e1)
    xi = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(back(xi, 1.5), math.sqrt(1.5) * e0(xi, 1.5), atol=1e-14)


@pytest.mark.parametrize("n", range(1, 11))
def test_lowering_exact(n):
    lhs = ladder_state_raw(n).lower_raw()
    assert lhs.exact_equal(ladder_state_raw(n - 1).times(dp_scale(d_bracket_poly(n), 2)))


@pytest.mark.parametrize("n", range(8))
def test_parity_alternates(n):
    assert dcalc.eigenfunction(n, 1.2).parity() == ("even" if n % 2 == 0 else "odd")


@pytest.mark.parametrize("D", [0.5, 1.0, 1.5])
def test_weighted_norms(D):
    es = [dcalc.eigenfunction(n, D) for n in range(5)]
    for m in range(5):
        for n in range(5):
            val = dcalc.weighted_inner(es[m], es[n], D)
            if m == n:
                assert val.real == pytest.approx(math.pi ** (D / 2), rel=1e-9)
            else:
                assert abs(val) < 1e-8


@pytest.mark.parametrize("D", [0.5, 1.0, 1.5, 2.0])
def test_weighted_volume(D):
    assert dcalc.weighted_volume(2.0, D) == pytest.approx(math.pi ** (D / 2) * 2 ** D / math.gamma(1 + D / 2), rel=1e-8)


def test_check_D():
    with pytest.raises(DomainError):
        dcalc.check_D(0.0)
