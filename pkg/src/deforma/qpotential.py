"""Quantum-potential extractors for real stationary amplitudes.

With psi = r exp(iS) and S constant, the real part of H psi = E psi
reads E = Qp + V, so each extractor returns the amplitude-dependent
term Qp and the energy balance Qp + V = E is the operational check.
hbar = m = 1 throughout.
"""

from __future__ import annotations

import math

import numpy as np

from .core.handles import FD_STEP_2, Grid, Profile, as_handle, d1, d2
from .core.polygauss import PolyGauss
from .dcalc import check_D, d_derivative
from .errors import AmplitudeZeroError, BasisExpansionError, DomainError, ParityError
from .fractional import FractionalPowerSeries, mrl_rho

AMPLITUDE_FLOOR = 1e-10
PARITY_TOL = 1e-8


def _handle(r, D: float | None = None):
    if isinstance(r, PolyGauss):
        if D is None:
            raise DomainError("PolyGauss amplitudes need D to be evaluated")
        return r.to_handle(D)
    return as_handle(r)


def _amplitude(r, xi):
    val = np.real(r(xi))
    if np.any(np.abs(val) < AMPLITUDE_FLOOR):
        raise AmplitudeZeroError(f"amplitude vanishes (|r| < {AMPLITUDE_FLOOR}) at the evaluation point")
    return val


def _scalar(v):
    return v[()] if np.ndim(v) == 0 else v


def qp_standard(r, xi, D: float | None = None):
    """-r''/(2r)."""
    r = _handle(r, D)
    xi = np.asarray(xi, dtype=float)
    rv = _amplitude(r, xi)
    return _scalar(-np.real(d2(r, xi)) / (2.0 * rv))


def qp_mrl(R, alpha: float, t: float, x):
    """-(1/2) rho(alpha)^2 (x t)^(2(alpha-1)) R_xx / R."""
    rho = mrl_rho(alpha)
    x = np.asarray(x, dtype=float)
    power = 2.0 * (alpha - 1.0)
    xt = x * float(t)
    if power != 0.0 and np.any(xt <= 0.0) and power != math.floor(power):
        raise DomainError("qp_mrl needs x t > 0 for a non-integer power")
    if power < 0.0 and np.any(xt == 0.0):
        raise DomainError("qp_mrl is singular at x t = 0 for alpha < 1")
    scale = rho * rho * (xt ** power if power != 0.0 else 1.0)
    return _scalar(scale * qp_standard(R, x))


def qp_fractional(R, alpha: float, x):
    """-(1/2) (D^alpha D^alpha R)(x) / R(x), Caputo applied termwise.

    R must be a FractionalPowerSeries in x^(k alpha) (or a bare coefficient
    sequence, read in that basis).
    """
    if isinstance(R, FractionalPowerSeries):
        if abs(R.alpha - alpha) > 1e-15:
            raise BasisExpansionError(f"series is in powers of x^{R.alpha}, not x^{alpha}")
        series = R
    elif isinstance(R, (list, tuple, np.ndarray)):
        series = FractionalPowerSeries(alpha, tuple(R))
    else:
        raise BasisExpansionError("qp_fractional needs the amplitude as a series in x^(k alpha)")
    x = np.asarray(x, dtype=float)
    rv = series(x)
    if np.any(np.abs(rv) < AMPLITUDE_FLOOR):
        raise AmplitudeZeroError("amplitude vanishes at the evaluation point")
    return _scalar(-0.5 * series.caputo().caputo()(x) / rv)


def check_parity(r, xi, parity: str) -> None:
    xi = np.asarray(xi, dtype=float)
    a, b = np.real(r(xi)), np.real(r(-xi))
    if parity == "even":
        bad = np.abs(a - b)
    elif parity == "odd":
        bad = np.abs(a + b)
    else:
        raise DomainError(f"parity must be even or odd, got {parity!r}")
    if np.any(bad > PARITY_TOL * np.abs(a)):
        raise ParityError(f"amplitude is not {parity}")


def qp_deformed(r, D: float, parity: str, xi):
    """Quantum potential of the Dunkl Hamiltonian in one parity sector.

    odd:  -r''/(2r) - (D-1) r'/(2 xi r) + (D-1)/(2 xi^2)
    even: -[r'' + ((D-1)/xi) r'] / (2r)
    """
    D = check_D(D)
    r = _handle(r, D)
    xi = np.asarray(xi, dtype=float)
    if np.any(xi == 0.0):
        raise DomainError("qp_deformed is undefined at xi = 0")
    check_parity(r, xi, parity)
    rv = _amplitude(r, xi)
    r1 = np.real(d1(r, xi))
    r2 = np.real(d2(r, xi))
    q = -(r2 + (D - 1.0) * r1 / xi) / (2.0 * rv)
    if parity == "odd":
        q = q + (D - 1.0) / (2.0 * xi * xi)
    return _scalar(q)


def printed_relation_constant(D: float) -> float:
    """c = [Qp + d_D^2 r/(2r)] xi^2 as the printed relation would have it: (D-1)(2D-1)/2."""
    return (D - 1.0) * (2.0 * D - 1.0) / 2.0


def qp_relation_values(r, D: float, parity: str, xi):
    """c(xi) = [Qp + (d_D d_D r)/(2r)] xi^2 with d_D applied twice literally."""
    D = check_D(D)
    xi = np.asarray(xi, dtype=float)
    if isinstance(r, PolyGauss):
        ddr = r.d_derivative().d_derivative().to_handle(D)
        rh = r.to_handle(D)
    else:
        rh = as_handle(r)
        # the outer step is larger: it differentiates a finite difference
        ddr = d_derivative(d_derivative(rh, D), D, FD_STEP_2)
    q = qp_deformed(rh, D, parity, xi)
    return _scalar((q + np.real(ddr(xi)) / (2.0 * np.real(rh(xi)))) * xi * xi)


def relation_meta(c, D: float, parity: str) -> dict:
    printed = printed_relation_constant(D)
    c = np.asarray(c, dtype=float)
    return {
        "D": D,
        "parity": parity,
        "method": "literal-composition",
        "max_abs_c": float(np.max(np.abs(c))),
        "printed_constant": printed,
        "max_deviation_from_printed": float(np.max(np.abs(c - printed))),
    }


def qp_relation_check(r, D: float, parity: str, grid: Grid) -> Profile:
    """c(xi) over a grid; literal composition gives c = 0 in both sectors.

    The printed constant and the deviation from it are recorded in ``meta``.
    """
    c = np.atleast_1d(qp_relation_values(r, D, parity, grid.abscissae))
    return Profile(grid, c, relation_meta(c, check_D(D), parity))
