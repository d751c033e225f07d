"""Double-double arithmetic (hi + lo pairs) for cancelling series.

The alternating Bessel series has terms of size ~e^x / x while its sum
is O(1/sqrt(x)), so at x = 50 plain doubles lose every digit.  Carrying
~32 significant digits through the sum leaves about 10 at the end.

Only arithmetic is used, so the same functions run on floats, under
numba, and elementwise on numpy arrays.  ``build(jit)`` returns the set
with every helper passed through ``jit``; numba needs the helpers it
calls to be compiled too, hence the closures.
"""

from types import SimpleNamespace

_SPLITTER = 134217729.0  # 2^27 + 1


def build(jit=None):
    jit = jit or (lambda f: f)

    @jit
    def two_sum(a, b):
        s = a + b
        bb = s - a
        return s, (a - (s - bb)) + (b - bb)

    @jit
    def quick_two_sum(a, b):
        s = a + b
        return s, b - (s - a)

    @jit
    def two_prod(a, b):
        p = a * b
        c = _SPLITTER * a
        ah = c - (c - a)
        al = a - ah
        c = _SPLITTER * b
        bh = c - (c - b)
        bl = b - bh
        return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl

    @jit
    def dd_add(ah, al, bh, bl):
        s, e = two_sum(ah, bh)
        return quick_two_sum(s, e + al + bl)

    @jit
    def dd_mul(ah, al, bh, bl):
        p, e = two_prod(ah, bh)
        return quick_two_sum(p, e + ah * bl + al * bh)

    @jit
    def dd_div(ah, al, bh, bl):
        q1 = ah / bh
        ph, pl = dd_mul(bh, bl, q1, 0.0 * q1)
        rh, rl = dd_add(ah, al, -ph, -pl)
        q2 = rh / bh
        ph, pl = dd_mul(bh, bl, q2, 0.0 * q2)
        rh, rl = dd_add(rh, rl, -ph, -pl)
        q3 = rh / bh
        s, e = quick_two_sum(q1, q2)
        return dd_add(s, e, q3, 0.0 * q3)

    @jit
    def bessel_step(th, tl, yh, yl, nu, k):
        """term * y / (k (nu + k)) in double-double."""
        sh, sl = two_sum(nu, k)
        dh, dl = dd_mul(sh, sl, k, 0.0 * k)
        rh, rl = dd_div(yh, yl, dh, dl)
        return dd_mul(th, tl, rh, rl)

    @jit
    def bessel_series(nu, x, tol, maxterms):
        """sum_k (-(x/2)^2)^k / (k! (nu+1)_k); returns (sum, terms) with terms = -1 on failure."""
        h = 0.5 * x
        yh, yl = two_prod(h, h)
        yh, yl = -yh, -yl
        th, tl = 1.0, 0.0
        sh, sl = 1.0, 0.0
        for k in range(1, maxterms + 1):
            th, tl = bessel_step(th, tl, yh, yl, nu, float(k))
            sh, sl = dd_add(sh, sl, th, tl)
            # terms only shrink once k(nu+k) > x^2/4
            if k * (nu + k) > -yh and abs(th) < tol * abs(sh):
                return sh + sl, k
        return sh + sl, -1

    return SimpleNamespace(
        two_sum=two_sum,
        quick_two_sum=quick_two_sum,
        two_prod=two_prod,
        dd_add=dd_add,
        dd_mul=dd_mul,
        dd_div=dd_div,
        bessel_step=bessel_step,
        bessel_series=bessel_series,
    )


PY = build()
