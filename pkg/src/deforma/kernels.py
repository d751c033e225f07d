"""Array kernels with a numba path and a vectorized numpy path.

Each kernel exists twice: ``_<name>_loop`` is plain loops compiled with
numba, ``_<name>_np`` is vectorized numpy.  The public name is bound to
one of them according to :mod:`deforma._backend`.  Both are exposed
through :data:`NUMBA` and :data:`NUMPY` so tests and the benchmark can
compare them directly.
"""

from __future__ import annotations

import math
from types import SimpleNamespace

import numpy as np

from ._backend import USE_NUMBA, njit
from .core import ddouble
from .core.special import LANCZOS_COEFFS, LANCZOS_G

_LC = np.array(LANCZOS_COEFFS)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


# -- log-gamma on arrays (positive arguments only) ---------------------------

def _lgamma_pos_loop(x, out):
    for i in range(x.shape[0]):
        xi = x[i]
        reflect = xi < 0.5
        refl = 0.0
        if reflect:
            # log Gamma(x) = log(pi / sin(pi x)) - log Gamma(1 - x), 0 < x < 1/2
            refl = math.log(math.pi / math.sin(math.pi * xi))
            xi = 1.0 - xi
        z = xi - 1.0
        a = _LC[0]
        for j in range(1, 9):
            a += _LC[j] / (z + j)
        t = z + LANCZOS_G + 0.5
        val = _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(a)
        out[i] = refl - val if reflect else val
    return out


def _lgamma_pos_np(x, out):
    small = x < 0.5
    xs = np.where(small, 1.0 - x, x)
    z = xs - 1.0
    a = _LC[0] + sum(_LC[j] / (z + j) for j in range(1, 9))
    t = z + LANCZOS_G + 0.5
    val = _HALF_LOG_2PI + (z + 0.5) * np.log(t) - t + np.log(a)
    with np.errstate(divide="ignore", invalid="ignore"):
        refl = np.log(np.pi / np.sin(np.pi * np.where(small, x, 0.25)))
    out[:] = np.where(small, refl - val, val)
    return out


# -- Bessel series z**(-nu) J_nu(z), per element -----------------------------

_bessel_series_jit = ddouble.build(njit).bessel_series


def _bessel_scaled_loop(nu, rg0, z, out):
    # rg0 = 1/Gamma(nu+1); the series is summed in double-double
    for i in range(z.shape[0]):
        total, used = _bessel_series_jit(nu, z[i], 1e-15, 500)
        out[i] = 2.0 ** (-nu) * rg0 * total
    return out


def _bessel_scaled_np(nu, rg0, z, out):
    # fixed-length vectorized sum; the term count covers the largest |z|
    dd = ddouble.PY
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    nterms = int(min(500, 30 + 2.0 * zmax))
    h = 0.5 * z
    yh, yl = dd.two_prod(h, h)
    yh, yl = -yh, -yl
    th, tl = np.ones_like(z), np.zeros_like(z)
    sh, sl = th.copy(), tl.copy()
    for k in range(1, nterms + 1):
        th, tl = dd.bessel_step(th, tl, yh, yl, nu, float(k))
        sh, sl = dd.dd_add(sh, sl, th, tl)
    out[:] = 2.0 ** (-nu) * rg0 * (sh + sl)
    return out


# -- Mittag-Leffler series sum_k z^(alpha k)/Gamma(1 + alpha k) --------------

def _mittag_leffler_loop(alpha, z, tol, maxterms, out):
    # returns the number of terms used by the slowest element (-1 on failure)
    worst = 0
    for i in range(z.shape[0]):
        zi = z[i]
        if zi == 0.0:
            out[i] = 1.0
            continue
        lz = math.log(zi)
        total = 1.0
        done = False
        for k in range(1, maxterms):
            ak = alpha * k
            # log Gamma(1 + ak) by Lanczos (argument >= 1)
            zz = ak
            a = _LC[0]
            for j in range(1, 9):
                a += _LC[j] / (zz + j)
            t = zz + LANCZOS_G + 0.5
            lg = _HALF_LOG_2PI + (zz + 0.5) * math.log(t) - t + math.log(a)
            term = math.exp(ak * lz - lg)
            total += term
            # past the peak the terms decay monotonically
            if ak > zi and term < tol * total:
                done = True
                if k > worst:
                    worst = k
                break
        if not done:
            return -1
        out[i] = total
    return worst


def _mittag_leffler_np(alpha, z, tol, maxterms, out):
    k = np.arange(maxterms, dtype=float)
    ak = alpha * k
    zz = ak
    a = _LC[0] + sum(_LC[j] / (zz + j) for j in range(1, 9))
    t = zz + LANCZOS_G + 0.5
    lg = _HALF_LOG_2PI + (zz + 0.5) * np.log(t) - t + np.log(a)
    # z = 0 rows give 0 * -inf here; they are fixed up below
    with np.errstate(divide="ignore", invalid="ignore"):
        lz = np.log(z)[:, None]
        logterm = ak[None, :] * lz - lg[None, :]
    logterm[:, 0] = 0.0
    terms = np.exp(logterm)
    csum = np.cumsum(terms, axis=1)
    ok = (ak[None, :] > z[:, None]) & (terms < tol * csum)
    ok[:, 0] = False
    ok[z == 0.0, 1] = True
    if not np.all(ok.any(axis=1)):
        return -1
    first = ok.argmax(axis=1)
    out[:] = csum[np.arange(z.shape[0]), first]
    return int(first.max())


# -- Riesz / Feller quadratures swept over a uniform grid --------------------
#
# ``s`` holds samples f(x_0 + (j - K) h), j = 0..n + 2K - 1, i.e. the n target
# nodes padded by K samples on each side.  ``w`` are the trapezoid weights
# times xi_k^(-1-alpha), k = 1..K.

def _riesz_sweep_loop(s, w, K, n, out):
    for i in range(n):
        c = i + K
        acc = 0.0
        two = 2.0 * s[c]
        for k in range(1, K + 1):
            acc += w[k - 1] * (s[c + k] - two + s[c - k])
        out[i] = acc
    return out


def _riesz_sweep_np(s, w, K, n, out):
    centre = s[K:K + n]
    acc = np.zeros(n)
    for k in range(1, K + 1):
        acc += w[k - 1] * (s[K + k:K + k + n] - 2.0 * centre + s[K - k:K - k + n])
    out[:] = acc
    return out


def _feller_sweep_loop(s, w, K, n, out):
    for i in range(n):
        c = i + K
        acc = 0.0
        for k in range(1, K + 1):
            acc += w[k - 1] * (s[c + k] - s[c - k])
        out[i] = acc
    return out


def _feller_sweep_np(s, w, K, n, out):
    acc = np.zeros(n)
    for k in range(1, K + 1):
        acc += w[k - 1] * (s[K + k:K + k + n] - s[K - k:K - k + n])
    out[:] = acc
    return out


NUMPY = SimpleNamespace(
    lgamma_pos=_lgamma_pos_np,
    bessel_scaled=_bessel_scaled_np,
    mittag_leffler=_mittag_leffler_np,
    riesz_sweep=_riesz_sweep_np,
    feller_sweep=_feller_sweep_np,
)

NUMBA = SimpleNamespace(
    lgamma_pos=njit(_lgamma_pos_loop),
    bessel_scaled=njit(_bessel_scaled_loop),
    mittag_leffler=njit(_mittag_leffler_loop),
    riesz_sweep=njit(_riesz_sweep_loop),
    feller_sweep=njit(_feller_sweep_loop),
)

ACTIVE = NUMBA if USE_NUMBA else NUMPY


def lgamma_pos(x: np.ndarray, impl=None) -> np.ndarray:
    """log Gamma on an array of positive arguments."""
    x = np.ascontiguousarray(x, dtype=float)
    return (impl or ACTIVE).lgamma_pos(x, np.empty_like(x))


def bessel_scaled(nu: float, rg0: float, z: np.ndarray, impl=None) -> np.ndarray:
    z = np.ascontiguousarray(np.abs(z), dtype=float)
    return (impl or ACTIVE).bessel_scaled(float(nu), float(rg0), z, np.empty_like(z))


def mittag_leffler(alpha: float, z: np.ndarray, tol: float, maxterms: int, impl=None):
    """Returns (values, terms_used); terms_used is -1 on non-convergence."""
    z = np.ascontiguousarray(z, dtype=float)
    out = np.empty_like(z)
    used = (impl or ACTIVE).mittag_leffler(float(alpha), z, float(tol), int(maxterms), out)
    return out, int(used)


def riesz_sweep(s: np.ndarray, w: np.ndarray, K: int, n: int, impl=None) -> np.ndarray:
    s = np.ascontiguousarray(s, dtype=float)
    w = np.ascontiguousarray(w, dtype=float)
    return (impl or ACTIVE).riesz_sweep(s, w, int(K), int(n), np.empty(n))


def feller_sweep(s: np.ndarray, w: np.ndarray, K: int, n: int, impl=None) -> np.ndarray:
    s = np.ascontiguousarray(s, dtype=float)
    w = np.ascontiguousarray(w, dtype=float)
    return (impl or ACTIVE).feller_sweep(s, w, int(K), int(n), np.empty(n))
