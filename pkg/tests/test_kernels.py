import math
import os
import subprocess
import sys

import mpmath
import numpy as np
import pytest

from deforma import kernels
from deforma.core import ddouble
from deforma.core.special import rgamma
from deforma.fractional import _quad_weights

BACKENDS = [kernels.NUMPY, kernels.NUMBA]
rng = np.random.default_rng(7)


@pytest.mark.parametrize("impl", BACKENDS, ids=["numpy", "numba"])
def test_lgamma_pos(impl):
    x = rng.uniform(0.05, 80, 500)
    ref = np.array([math.lgamma(t) for t in x])
    np.testing.assert_allclose(kernels.lgamma_pos(x, impl=impl), ref, rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("impl", BACKENDS, ids=["numpy", "numba"])
@pytest.mark.parametrize("nu", [-0.25, 0.0, 0.5, 1.5])
def test_bessel_scaled(impl, nu):
    z = np.linspace(0, 40, 81)
    got = kernels.bessel_scaled(nu, rgamma(nu + 1), z, impl=impl)
    # z^-nu J_nu(z), finite at 0
    ref = [float(mpmath.besselj(nu, t) / mpmath.mpf(t) ** nu) if t else 2.0**-nu * rgamma(nu + 1) for t in z]
    np.testing.assert_allclose(got, ref, rtol=1e-9, atol=1e-12)


@pytest.mark.parametrize("impl", BACKENDS, ids=["numpy", "numba"])
def test_mittag_leffler(impl):
    # sum_k z^(alpha k) / Gamma(1 + alpha k), z >= 0
    z = np.linspace(0, 5, 33)
    vals, used = kernels.mittag_leffler(0.7, z, 1e-15, 500, impl=impl)
    assert used > 0
    ref = [float(mpmath.nsum(lambda k: mpmath.mpf(t) ** (0.7 * k) / mpmath.gamma(0.7 * k + 1), [0, mpmath.inf])) for t in z]
    np.testing.assert_allclose(vals, ref, rtol=1e-11, atol=1e-13)


def test_mittag_leffler_reports_failure():
    for impl in BACKENDS:
        _, used = kernels.mittag_leffler(0.5, np.array([30.0]), 1e-15, 10, impl=impl)
        assert used == -1


@pytest.mark.parametrize("name", ["riesz_sweep", "feller_sweep"])
def test_sweeps_agree(name):
    K, h, n = 256, 1 / 32, 41
    w = _quad_weights(1.3, K, h)
    s = np.exp(-0.5 * (np.arange(n + 2 * K) * h - 8.6) ** 2)
    a = getattr(kernels, name)(s, w, K, n, impl=kernels.NUMPY)
    b = getattr(kernels, name)(s, w, K, n, impl=kernels.NUMBA)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-15)


def test_double_double_product_is_exact():
    a, b = 1.0 + 2.0**-30, 1.0 - 2.0**-29
    p, e = ddouble.PY.two_prod(a, b)
    exact = mpmath.mpf(a) * mpmath.mpf(b)
    assert mpmath.mpf(p) + mpmath.mpf(e) == exact


def test_backend_env_switch():
    code = "import deforma; print(deforma.backend_name())"
    env = dict(os.environ, DEFORMA_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["DEFORMA_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numba"
