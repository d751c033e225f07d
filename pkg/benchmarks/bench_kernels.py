"""Time the numba and numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Compilation happens in a warm-up call and is reported separately.
"""
import argparse
import time

import numpy as np

from deforma import kernels
from deforma.core.special import rgamma
from deforma.fractional import _quad_weights


def cases():
    rng = np.random.default_rng(0)
    x = rng.uniform(0.1, 50, 200_000)
    z = rng.uniform(0, 40, 20_000)
    zm = rng.uniform(0, 6, 20_000)
    K = 3072
    h = 1 / 256
    w = _quad_weights(1.5, K, h)
    n = 401
    s = np.exp(-0.5 * (np.arange(n + 2 * K) * h - 14) ** 2)
    return {
        "lgamma_pos (2e5)": lambda impl: kernels.lgamma_pos(x, impl=impl),
        "bessel_scaled (2e4)": lambda impl: kernels.bessel_scaled(0.25, rgamma(1.25), z, impl=impl),
        "mittag_leffler (2e4)": lambda impl: kernels.mittag_leffler(0.7, zm, 1e-14, 500, impl=impl),
        "riesz_sweep (401 x 3072)": lambda impl: kernels.riesz_sweep(s, w, K, n, impl=impl),
        "feller_sweep (401 x 3072)": lambda impl: kernels.feller_sweep(s, w, K, n, impl=impl),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<28}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}{'compile s':>11}{'max diff':>11}")
    for name, fn in cases().items():
        t0 = time.perf_counter()
        ref = fn(kernels.NUMBA)
        compile_s = time.perf_counter() - t0
        out = fn(kernels.NUMPY)
        a = ref[0] if isinstance(ref, tuple) else ref
        b = out[0] if isinstance(out, tuple) else out
        diff = float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))
        t_np = best_of(lambda: fn(kernels.NUMPY), args.repeat)
        t_nb = best_of(lambda: fn(kernels.NUMBA), args.repeat)
        print(f"{name:<28}{t_np * 1e3:>10.2f}{t_nb * 1e3:>10.2f}{t_np / t_nb:>9.1f}{compile_s:>11.2f}{diff:>11.1e}")


if __name__ == "__main__":
    main()
