"""Fractional calculus: Caputo, Riesz and Feller derivatives, Mittag-Leffler.

The Riesz and Feller quadratures share one scheme: trapezoid in the
distance variable xi = kh, a generalised Euler-Maclaurin (Navot) weight
for the xi^(1-alpha) / xi^(-alpha) endpoint behaviour at xi = 0, and for
Riesz an analytic tail beyond the cutoff.  The grid sweeps themselves
live in :mod:`deforma.kernels`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz
from scipy.special import zeta

from . import kernels
from .core.handles import FD_STEP_1, FD_STEP_2, FunctionHandle, Grid, Profile, as_handle, d1
from .core.special import gamma, lgamma
from .errors import ConvergenceError, DomainError, SingularWeightWarning, DecayWarning

DEFAULT_CUTOFF = 12.0
DEFAULT_H = 1.0 / 256
CAPUTO_PANELS = 512  # default h = x / CAPUTO_PANELS
ML_MAX_TERMS = 500
GRADING = 4  # far-field mesh xi = (x/2) t^GRADING


def _check_alpha(alpha: float, lo: float, hi: float, lo_open=True, hi_open=False) -> float:
    alpha = float(alpha)
    bad = (alpha <= lo if lo_open else alpha < lo) or (alpha >= hi if hi_open else alpha > hi)
    if bad or not math.isfinite(alpha):
        lb = "(" if lo_open else "["
        rb = ")" if hi_open else "]"
        raise DomainError(f"alpha must lie in {lb}{lo}, {hi}{rb}, got {alpha}")
    return alpha


# -- power rule ----------------------------------------------------------------

def caputo_power_coeff(n: int, alpha: float) -> float:
    """Coefficient of x^((n-1)alpha) in D^alpha x^(n alpha).

    Gamma(1+n alpha)/Gamma(1+(n-1) alpha) for n > 0 and 0 for n = 0.
    """
    n = int(n)
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    alpha = _check_alpha(alpha, 0.0, 1.0)
    if n == 0:
        return 0.0
    return math.exp(lgamma(1.0 + n * alpha) - lgamma(1.0 + (n - 1) * alpha))


# the fractional bracket [n]_alpha is the same number under a second name
frac_bracket = caputo_power_coeff


def mrl_rho(alpha: float) -> float:
    """rho(alpha) = alpha! ((1-alpha)!)^2 = Gamma(1+alpha) Gamma(2-alpha)^2."""
    alpha = _check_alpha(alpha, 0.0, 1.0)
    return gamma(1.0 + alpha) * gamma(2.0 - alpha) ** 2


# -- Caputo --------------------------------------------------------------------

def _trapezoid(y: np.ndarray, dx: float):
    return dx * (np.sum(y) - 0.5 * (y[0] + y[-1]))


def _d1_from_right(f, xi: np.ndarray, h: float = FD_STEP_1):
    """4th-order first derivative, switching to a forward stencil near 0."""
    deriv = getattr(f, "derivative", None)
    if deriv is not None:
        return deriv(xi)
    xi = np.asarray(xi, dtype=float)
    flat = np.atleast_1d(xi)
    out = np.array(d1(f, np.maximum(flat, 2 * h), h))
    near = flat < 2 * h
    if np.any(near):
        x0 = flat[near]
        out[near] = (-25 * f(x0) + 48 * f(x0 + h) - 36 * f(x0 + 2 * h)
                     + 16 * f(x0 + 3 * h) - 3 * f(x0 + 4 * h)) / (12 * h)
    return out.reshape(xi.shape)[()] if xi.ndim == 0 else out


def _caputo_lt1(f, fprime, alpha: float, x: float, n: int):
    """Order alpha in [0, 1): (1/Gamma(1-alpha)) int_0^x (x-xi)^-alpha f'(xi) dxi."""
    half = 0.5 * x
    # [x/2, x]: u = (x - xi)^(1-alpha) removes the endpoint singularity
    beta = 1.0 - alpha
    U = half ** beta
    u = np.linspace(0.0, U, n + 1)
    near = _trapezoid(fprime(x - u ** (1.0 / beta)), U / n) / beta
    # [0, x/2]: integrate by parts so only f - f(0) is needed, which keeps
    # x^p with p < 1 (singular f' at 0) well behaved on a graded mesh
    t = np.linspace(0.0, 1.0, n + 1)
    xi = half * t ** GRADING
    f0 = f(0.0)
    g = f(xi) - f0
    integrand = alpha * (x - xi) ** (-alpha - 1.0) * g * half * GRADING * t ** (GRADING - 1)
    far = half ** (-alpha) * (f(half) - f0) - _trapezoid(integrand, 1.0 / n)
    return (near + far) / gamma(1.0 - alpha)


def caputo(f, alpha: float, x: float, h: float | None = None):
    """Caputo derivative of order alpha in (0, 2) at x > 0.

    For 1 <= alpha < 2 the second branch equals the order alpha-1 branch
    applied to f', which is how it is computed.  ``h`` is the quadrature
    step (default x/512); f' is taken from ``f.derivative`` when present
    and otherwise by finite differences.

    Warns
    -----
    SingularWeightWarning
        If h > x/16.
    """
    alpha = _check_alpha(alpha, 0.0, 2.0, lo_open=False, hi_open=True)
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"caputo needs x > 0, got {x}")
    h = x / CAPUTO_PANELS if h is None else float(h)
    if not h > 0.0:
        raise DomainError(f"step must be positive, got {h}")
    if h > x / 16:
        warnings.warn(f"step {h} is coarse for x = {x} (needs h <= x/16)", SingularWeightWarning, stacklevel=2)
    n = max(int(math.ceil(x / h)), 2)
    f = as_handle(f)
    if alpha < 1.0:
        return _caputo_lt1(f, lambda s: _d1_from_right(f, s), alpha, x, n)
    fp = FunctionHandle(lambda s: _d1_from_right(f, s), f.domain, derivative=f.derivative and f.derivative.derivative)
    return _caputo_lt1(fp, lambda s: _d1_from_right(fp, s, FD_STEP_2), alpha - 1.0, x, n)


# -- Riesz / Feller ------------------------------------------------------------

def riesz_constant(alpha: float) -> float:
    return gamma(1.0 + alpha) * math.sin(0.5 * math.pi * alpha) / math.pi


def feller_constant(alpha: float) -> float:
    return gamma(1.0 + alpha) * math.cos(0.5 * math.pi * alpha) / math.pi


def _quad_weights(alpha: float, K: int, h: float) -> np.ndarray:
    xi = h * np.arange(1, K + 1)
    w = h * xi ** (-1.0 - alpha)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _samples(f, x0: float, n: int, K: int, h: float) -> np.ndarray:
    pts = x0 + h * (np.arange(n + 2 * K) - K)
    return np.asarray(f(pts))


def _check_decay(s: np.ndarray) -> None:
    big = np.max(np.abs(s))
    edge = max(abs(s[0]), abs(s[-1]))
    if big > 0 and edge > 1e-8 * big:
        warnings.warn("function has not decayed at the cutoff; the tail estimate is unreliable",
                      DecayWarning, stacklevel=3)


def _sweep(kernel, s: np.ndarray, w: np.ndarray, K: int, n: int) -> np.ndarray:
    if np.iscomplexobj(s):
        return kernel(s.real, w, K, n) + 1j * kernel(s.imag, w, K, n)
    return kernel(s, w, K, n)


def _riesz_block(f, alpha, x0, n, cutoff, h):
    K = int(round(cutoff / h))
    if K < 2:
        raise DomainError("cutoff must span at least two steps")
    s = _samples(f, x0, n, K, h)
    _check_decay(s)
    w = _quad_weights(alpha, K, h)
    body = _sweep(kernels.riesz_sweep, s, w, K, n)
    centre = s[K:K + n]
    second = (s[K + 1:K + 1 + n] - 2.0 * centre + s[K - 1:K - 1 + n]) / (h * h)
    body = body + second * h ** (2.0 - alpha) * (0.5 - zeta(alpha - 1.0))
    # tail beyond the cutoff with f frozen at its edge samples; for a
    # decayed f this is the -2 f(x) C^-alpha / alpha term
    edges = s[2 * K:2 * K + n] + s[:n] - 2.0 * centre
    body = body + edges * (K * h) ** (-alpha) / alpha
    return riesz_constant(alpha) * body


def _feller_block(f, alpha, x0, n, cutoff, h):
    K = int(round(cutoff / h))
    if K < 2:
        raise DomainError("cutoff must span at least two steps")
    s = _samples(f, x0, n, K, h)
    _check_decay(s)
    w = _quad_weights(alpha, K, h)
    body = _sweep(kernels.feller_sweep, s, w, K, n)
    first = (s[K + 1:K + 1 + n] - s[K - 1:K - 1 + n]) / (2.0 * h)
    body = body + 2.0 * first * h ** (1.0 - alpha) * (0.5 - zeta(alpha))
    body = body + (s[2 * K:2 * K + n] - s[:n]) * (K * h) ** (-alpha) / alpha
    return feller_constant(alpha) * body


def _pointwise(block, f, alpha, x, cutoff, h):
    f = as_handle(f)
    xs = np.asarray(x, dtype=float)
    vals = [block(f, alpha, float(xi), 1, cutoff, h)[0] for xi in xs.ravel()]
    out = np.array(vals).reshape(xs.shape)
    return out[()] if out.ndim == 0 else out


def riesz(f, alpha: float, x, cutoff: float = DEFAULT_CUTOFF, h: float = DEFAULT_H):
    """Riesz derivative of order alpha in (0, 2).

    c(alpha) int_0^inf (f(x+xi) - 2 f(x) + f(x-xi)) / xi^(1+alpha) dxi,
    c = Gamma(1+alpha) sin(pi alpha/2)/pi.  Trapezoid on [h, cutoff] plus
    the xi -> 0 endpoint weight f''(x) h^(2-alpha) (1/2 - zeta(alpha-1))
    and the exact tail -2 f(x) cutoff^-alpha / alpha.
    """
    alpha = _check_alpha(alpha, 0.0, 2.0, hi_open=True)
    return _pointwise(_riesz_block, f, alpha, x, cutoff, h)


def feller(f, alpha: float, x, cutoff: float = DEFAULT_CUTOFF, h: float = DEFAULT_H):
    """Feller derivative of order alpha in [0, 1).

    c(alpha) int_0^inf (f(x+xi) - f(x-xi)) / xi^(1+alpha) dxi with
    c = Gamma(1+alpha) cos(pi alpha/2)/pi.  The tail needs no correction
    because the first difference of a decaying f vanishes there.
    """
    alpha = _check_alpha(alpha, 0.0, 1.0, lo_open=False, hi_open=True)
    return _pointwise(_feller_block, f, alpha, x, cutoff, h)


def riesz_profile(f, alpha: float, grid: Grid, cutoff: float = DEFAULT_CUTOFF) -> Profile:
    """Riesz derivative on every node of a uniform grid in one sweep (h = grid spacing)."""
    alpha = _check_alpha(alpha, 0.0, 2.0, hi_open=True)
    vals = _riesz_block(as_handle(f), alpha, grid.abscissae[0], len(grid), cutoff, grid.spacing)
    return Profile(grid, vals, {"alpha": alpha, "method": "riesz", "cutoff": cutoff})


def feller_profile(f, alpha: float, grid: Grid, cutoff: float = DEFAULT_CUTOFF) -> Profile:
    alpha = _check_alpha(alpha, 0.0, 1.0, lo_open=False, hi_open=True)
    vals = _feller_block(as_handle(f), alpha, grid.abscissae[0], len(grid), cutoff, grid.spacing)
    return Profile(grid, vals, {"alpha": alpha, "method": "feller", "cutoff": cutoff})


def riesz_matrix(alpha: float, n: int, h: float) -> np.ndarray:
    """Riesz quadrature on an n-point grid of step h as a symmetric Toeplitz matrix.

    Row i is the quadrature above applied to grid functions vanishing
    outside the grid, with the cutoff sent to infinity (zeta-function
    tail sums).
    """
    alpha = _check_alpha(alpha, 0.0, 2.0, hi_open=True)
    corr = 0.5 - zeta(alpha - 1.0)
    k = np.arange(n, dtype=float)
    col = np.empty(n)
    col[1:] = k[1:] ** (-1.0 - alpha)
    col[0] = -2.0 * (zeta(1.0 + alpha) - 0.5) - 2.0 * corr
    if n > 1:
        col[1] = 0.5 + corr
    return toeplitz(riesz_constant(alpha) * h ** (-alpha) * col)


# -- Mittag-Leffler ------------------------------------------------------------

def mittag_leffler(alpha: float, z, tol: float = 1e-14):
    """E_alpha(z^alpha) = sum_k z^(alpha k) / Gamma(1 + alpha k), z >= 0.

    Note the argument convention: this is the textbook E_alpha evaluated
    at z**alpha.
    """
    alpha = _check_alpha(alpha, 0.0, 2.0)
    zs = np.asarray(z, dtype=float)
    if np.any(zs < 0):
        raise DomainError("mittag_leffler needs z >= 0")
    vals, used = kernels.mittag_leffler(alpha, zs.ravel(), tol, ML_MAX_TERMS)
    if used < 0:
        raise ConvergenceError(f"Mittag-Leffler series did not converge in {ML_MAX_TERMS} terms")
    out = vals.reshape(zs.shape)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class FractionalPowerSeries:
    """R(x) = sum_k coeffs[k] x^(k alpha), x >= 0.

    The Caputo derivative acts termwise through the power rule, so
    repeated application stays exact.
    """

    alpha: float
    coeffs: tuple

    def __post_init__(self):
        _check_alpha(self.alpha, 0.0, 1.0)
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @classmethod
    def mittag_leffler(cls, alpha: float, lam: float, terms: int = 80) -> "FractionalPowerSeries":
        """E_alpha(lam x^alpha) = sum lam^k x^(k alpha)/Gamma(1 + k alpha)."""
        return cls(alpha, tuple(lam ** k / gamma(1.0 + k * alpha) for k in range(terms)))

    def caputo(self) -> "FractionalPowerSeries":
        c = self.coeffs
        return FractionalPowerSeries(self.alpha, tuple(c[k] * caputo_power_coeff(k, self.alpha)
                                                       for k in range(1, len(c))) or (0.0,))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise DomainError("fractional power series are evaluated at x >= 0")
        u = x ** self.alpha
        out = np.polynomial.polynomial.polyval(u, np.array(self.coeffs))
        return out[()] if np.ndim(out) == 0 else out
