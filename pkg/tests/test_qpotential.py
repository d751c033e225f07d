import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deforma import dcalc, qpotential
from deforma.core import Grid, PolyGauss, gamma, parse_expression
from deforma.errors import AmplitudeZeroError, BasisExpansionError, DomainError, ParityError
from deforma.fractional import FractionalPowerSeries

gauss = lambda t: np.exp(-t * t / 2)


def test_standard_examples():
    assert qpotential.qp_standard(gauss, 0.0) == pytest.approx(0.5, abs=1e-9)
    assert qpotential.qp_standard(lambda t: 0 * t + 3.0, np.array([0.1, 2.0])) == pytest.approx([0, 0], abs=1e-9)


@given(st.floats(-3, 3))
def test_standard_gaussian_closed_form(x):
    assert qpotential.qp_standard(gauss, x) == pytest.approx((1 - x * x) / 2, abs=1e-7)


def test_mrl_examples():
    assert qpotential.qp_mrl(gauss, 0.5, 1.0, 1.0) == pytest.approx(0.0, abs=1e-9)
    x = np.array([0.4, 1.7])
    np.testing.assert_allclose(qpotential.qp_mrl(gauss, 1.0, 2.5, x), qpotential.qp_standard(gauss, x), rtol=1e-10)


def test_mrl_scaling_in_t():
    # power 2(alpha-1) = -1 at alpha = 1/2
    a = qpotential.qp_mrl(gauss, 0.5, 1.0, 0.5)
    b = qpotential.qp_mrl(gauss, 0.5, 4.0, 0.5)
    assert b / a == pytest.approx(0.25, rel=1e-12)
    with pytest.raises(DomainError):
        qpotential.qp_mrl(gauss, 0.5, 1.0, 0.0)


@pytest.mark.parametrize("lam", [0.5, 1.0])
@pytest.mark.parametrize("alpha", [0.4, 0.7])
def test_fractional_on_mittag_leffler(lam, alpha):
    s = FractionalPowerSeries.mittag_leffler(alpha, lam)
    x = np.linspace(0.05, 2, 25)
    np.testing.assert_allclose(qpotential.qp_fractional(s, alpha, x), -lam * lam / 2, atol=1e-8)


def test_fractional_classical_limit():
    # e^{-x^2/2} = sum (-1/2)^k x^(2k) / k!, 20 terms
    coeffs = [0.0] * 40
    for k in range(20):
        coeffs[2 * k] = (-0.5) ** k / math.factorial(k)
    std = qpotential.qp_standard(gauss, 0.5)
    assert qpotential.qp_fractional(coeffs, 1.0, 0.5) == pytest.approx(std, abs=1e-3)
    near = qpotential.qp_fractional(coeffs, 0.9999, 0.5)
    assert near == pytest.approx(std, abs=1e-3)


def test_fractional_needs_series():
    with pytest.raises(BasisExpansionError):
        qpotential.qp_fractional(gauss, 0.5, 1.0)
    with pytest.raises(BasisExpansionError):
        qpotential.qp_fractional(FractionalPowerSeries.mittag_leffler(0.5, 1.0), 0.6, 1.0)


# -- deformed sectors --------------------------------------------------------------

@pytest.mark.parametrize("D", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("n", range(5))
def test_energy_balance(D, n):
    xi = np.linspace(0.3, 3, 41)
    parity = "even" if n % 2 == 0 else "odd"
    q = qpotential.qp_deformed(dcalc.eigenfunction(n, D), D, parity, xi)
    np.testing.assert_allclose(q + xi * xi / 2, n + D / 2, atol=1e-6)


@settings(max_examples=20)
@given(st.floats(0.3, 2.0))
def test_even_sector_at_D1_is_standard(w):
    r = lambda t: np.exp(-w * t * t / 2)
    xi = np.linspace(0.2, 3, 15)
    np.testing.assert_allclose(qpotential.qp_deformed(r, 1.0, "even", xi), qpotential.qp_standard(r, xi), rtol=1e-10)


def test_odd_sector_at_D1_is_standard():
    r = lambda t: t * np.exp(-t * t / 2)
    xi = np.linspace(0.2, 3, 15)
    np.testing.assert_allclose(qpotential.qp_deformed(r, 1.0, "odd", xi), qpotential.qp_standard(r, xi), rtol=1e-10)


def test_even_gaussian_closed_form():
    xi = np.linspace(-3, 3, 12)
    np.testing.assert_allclose(qpotential.qp_deformed(gauss, 1.5, "even", xi), (1.5 - xi * xi) / 2, atol=1e-7)


@pytest.mark.parametrize("text, parity", [("exp(-x^2/2)", "even"), ("x*exp(-x^2/2)", "odd")])
def test_relation_check_expressions(text, parity):
    prof = qpotential.qp_relation_check(parse_expression(text), 1.5, parity, Grid.uniform(0.3, 3, 28))
    assert prof.meta["max_abs_c"] < 1e-7
    assert prof.meta["printed_constant"] == pytest.approx(0.5)
    assert prof.meta["max_deviation_from_printed"] > 0.1


@pytest.mark.parametrize("D", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("n", range(5))
def test_relation_check_exact(D, n):
    parity = "even" if n % 2 == 0 else "odd"
    prof = qpotential.qp_relation_check(dcalc.eigenfunction(n, D), D, parity, Grid.uniform(0.3, 3, 41))
    assert prof.meta["max_abs_c"] < 1e-7


def test_printed_constant():
    assert qpotential.printed_relation_constant(1.5) == pytest.approx(0.5)
    assert qpotential.printed_relation_constant(1.0) == 0.0


def test_errors():
    with pytest.raises(ParityError):
        qpotential.qp_deformed(lambda t: np.exp(-(t - 0.3) ** 2), 1.5, "even", np.array([0.5, 1.0]))
    with pytest.raises(AmplitudeZeroError):
        qpotential.qp_standard(lambda t: t * np.exp(-t * t), 0.0)
    with pytest.raises(DomainError):
        qpotential.qp_deformed(gauss, 1.5, "even", 0.0)
    with pytest.raises(DomainError):
        qpotential.qp_deformed(gauss, 1.5, "both", 1.0)
    with pytest.raises(DomainError):
        qpotential.qp_standard(PolyGauss.gaussian(), 1.0)
