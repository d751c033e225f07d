"""Symmetric q-calculus and one-sided Q-calculus.

Brackets, Jackson derivatives and integrals, the deformed exponentials
and the closed forms of iterated derivatives.  Derivatives return
FunctionHandles; ``x = 0`` is excluded from every deformed derivative
because each formula divides by ``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core.handles import FunctionHandle, as_handle
from .errors import ConvergenceError, DomainError

SERIES_REL_TOL = 1e-14
SERIES_MAX_TERMS = 500
MAX_CLOSED_FORM_ORDER = 12


def _check_base(q: float, name: str = "q") -> float:
    q = float(q)
    if not q > 0.0 or q == 1.0 or not math.isfinite(q):
        raise DomainError(f"{name} must be positive and different from 1, got {q}")
    return q


def _nonzero(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise DomainError("deformed derivatives are undefined at x = 0")
    return x


def _scalar(v):
    return v[()] if np.ndim(v) == 0 else v


# -- brackets ----------------------------------------------------------------

def q_bracket(x, q: float):
    """[x]_q = (q^x - q^-x)/(q - 1/q), symmetric under q -> 1/q.

    Written as sinh(x log q)/sinh(log q), which stays accurate as q -> 1.
    """
    lq = math.log(_check_base(q))
    return _scalar(np.sinh(np.asarray(x, dtype=float) * lq) / math.sinh(lq))


def Q_bracket(x, Q: float):
    """[x]_Q = (Q^x - 1)/(Q - 1)."""
    lQ = math.log(_check_base(Q, "Q"))
    return _scalar(np.expm1(np.asarray(x, dtype=float) * lQ) / math.expm1(lQ))


def q_factorial(n: int, q: float) -> float:
    out = 1.0
    for k in range(1, n + 1):
        out *= q_bracket(k, q)
    return out


def Q_factorial(n: int, Q: float) -> float:
    out = 1.0
    for k in range(1, n + 1):
        out *= Q_bracket(k, Q)
    return out


def Q_binomial(n: int, k: int, Q: float) -> float:
    """Gaussian binomial [n k]_Q = [n]_Q! / ([k]_Q! [n-k]_Q!)."""
    if k < 0 or k > n:
        return 0.0
    # product form avoids the large intermediate factorials
    out = 1.0
    for j in range(1, k + 1):
        out *= Q_bracket(n - k + j, Q) / Q_bracket(j, Q)
    return out


# -- derivatives ---------------------------------------------------------------

def q_derivative(f, q: float) -> FunctionHandle:
    """x -> (f(qx) - f(x/q)) / ((q - 1/q) x)."""
    q = _check_base(q)
    f = as_handle(f)
    denom = q - 1.0 / q

    def ev(x):
        x = _nonzero(x)
        return _scalar((f(q * x) - f(x / q)) / (denom * x))

    return FunctionHandle(ev, f.domain, name=f"Dq[{f.name}]")


def Q_derivative(f, Q: float) -> FunctionHandle:
    """x -> (f(Qx) - f(x)) / ((Q - 1) x)."""
    Q = _check_base(Q, "Q")
    f = as_handle(f)

    def ev(x):
        x = _nonzero(x)
        return _scalar((f(Q * x) - f(x)) / ((Q - 1.0) * x))

    return FunctionHandle(ev, f.domain, name=f"DQ[{f.name}]")


def q_derivative_nested2(f, q: float) -> FunctionHandle:
    """Closed form of D^q D^q f using only f(q^2 x), f(x), f(x/q^2)."""
    q = _check_base(q)
    f = as_handle(f)
    q2 = q * q
    a = 1.0 / (q2 - 1.0)
    b = 1.0 / (1.0 - 1.0 / q2)
    denom = q - 1.0 / q

    def ev(x):
        x = _nonzero(x)
        val = (f(q2 * x) * a + f(x / q2) * b - f(x) * (a + b)) / (denom * x * x)
        return _scalar(val)

    return FunctionHandle(ev, f.domain, name=f"Dq2[{f.name}]")


def Q_derivative_n(f, Q: float, n: int) -> FunctionHandle:
    """n-th iterated Q-derivative from the Gaussian-binomial closed form.

    (D^Q)^n f(x) = (Q-1)^-n Q^(-n(n-1)/2) x^-n
                   * sum_k [n k]_Q (-1)^k Q^(k(k-1)/2) f(Q^(n-k) x)
    """
    Q = _check_base(Q, "Q")
    n = int(n)
    if not 1 <= n <= MAX_CLOSED_FORM_ORDER:
        raise DomainError(f"order must be in 1..{MAX_CLOSED_FORM_ORDER}, got {n}")
    f = as_handle(f)
    weights = [Q_binomial(n, k, Q) * (-1) ** k * Q ** (k * (k - 1) / 2) for k in range(n + 1)]
    pre = (Q - 1.0) ** (-n) * Q ** (-n * (n - 1) / 2)

    def ev(x):
        x = _nonzero(x)
        acc = sum(w * f(Q ** (n - k) * x) for k, w in enumerate(weights))
        return _scalar(pre * acc / x ** n)

    return FunctionHandle(ev, f.domain, name=f"DQ^{n}[{f.name}]")


def iterate(op, f, n: int, *args) -> FunctionHandle:
    """Apply ``op(., *args)`` n times; the reference for the closed forms."""
    g = as_handle(f)
    for _ in range(n):
        g = op(g, *args)
    return g


def q_derivative_qn(f, q: float, n: int) -> FunctionHandle:
    """D^{q^n} directly: (f(q^n x) - f(q^-n x)) / ((q^n - q^-n) x)."""
    return q_derivative(f, _check_base(q) ** int(n))


def q_derivative_qn_average(f, q: float, n: int) -> FunctionHandle:
    """D^{q^n} as (1/[n]_q) sum_k D^q[f(c_k .)](x), c_k = q^(2k-(n-1)).

    Each summand is D^q applied to the rescaled function u -> f(c_k u);
    the sum telescopes, so the identity is exact for every n >= 1.
    """
    q = _check_base(q)
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    f = as_handle(f)
    parts = [q_derivative(f.scaled(q ** (2 * k - (n - 1))), q) for k in range(n)]
    bn = q_bracket(n, q)

    def ev(x):
        return _scalar(sum(p(x) for p in parts) / bn)

    return FunctionHandle(ev, f.domain, name=f"Dq^{n}avg[{f.name}]")


# -- exponentials --------------------------------------------------------------

def _exp_series(bracket, a: float, z: float, tol: float, label: str) -> float:
    x = float(a) * float(z)
    total = 1.0
    term = 1.0
    for n in range(1, SERIES_MAX_TERMS + 1):
        term *= x / bracket(n)
        total += term
        if abs(term) < tol * abs(total) or term == 0.0:
            return total
    raise ConvergenceError(f"{label} series did not converge in {SERIES_MAX_TERMS} terms (az={x})")


def q_exp(a: float, z: float, q: float, tol: float = SERIES_REL_TOL) -> float:
    """e_q(az) = sum (az)^n / [n]_q!."""
    q = _check_base(q)
    return _exp_series(lambda n: q_bracket(n, q), a, z, tol, "q-exponential")


def Q_exp(a: float, z: float, Q: float, tol: float = SERIES_REL_TOL) -> float:
    """e_Q(az) = sum (az)^n / [n]_Q!.

    For Q < 1 the brackets saturate at 1/(1-Q) and the series has radius
    1/(1-Q); outside it the terms stop decaying and ConvergenceError is raised.
    """
    Q = _check_base(Q, "Q")
    return _exp_series(lambda n: Q_bracket(n, Q), a, z, tol, "Q-exponential")


def exp_handle(kind: Literal["q", "Q"], a: float, q: float, tol: float = SERIES_REL_TOL) -> FunctionHandle:
    """x -> e_q(ax) or e_Q(ax) as a vectorized handle."""
    fn = q_exp if kind == "q" else Q_exp

    def ev(x):
        x = np.asarray(x, dtype=float)
        out = np.vectorize(lambda t: fn(a, t, q, tol), otypes=[float])(x)
        return _scalar(out)

    return FunctionHandle(ev, name=f"e_{kind}({a}x)")


# -- Jackson integrals ---------------------------------------------------------

def _jackson_sum(f, nodes_fn, weights_fn, shape, label: str):
    total = np.zeros(shape)
    for k in range(SERIES_MAX_TERMS):
        term = weights_fn(k) * np.asarray(f(nodes_fn(k)), dtype=float)
        total = total + term
        if np.all(np.abs(term) <= SERIES_REL_TOL * np.abs(total)):
            return total
    raise ConvergenceError(f"{label} did not converge in {SERIES_MAX_TERMS} terms")


def q_integral(f, a, q: float):
    """Jackson integral of f over [0, a] for the symmetric q-derivative.

    a (1/q - q) sum_n q^(2n+1) f(q^(2n+1) a); q > 1 is mapped to 1/q.
    """
    q = _check_base(q)
    if q > 1.0:
        q = 1.0 / q
    f = as_handle(f)
    a = np.asarray(a, dtype=float)
    s = _jackson_sum(f, lambda n: q ** (2 * n + 1) * a, lambda n: q ** (2 * n + 1), a.shape, "q-integral")
    return _scalar(a * (1.0 / q - q) * s)


def Q_integral(f, x, Q: float):
    """Jackson integral of f over [0, x]: x (1-Q) sum_k Q^k f(Q^k x), 0 < Q < 1."""
    Q = _check_base(Q, "Q")
    if Q > 1.0:
        raise DomainError(f"the Q-integral series needs 0 < Q < 1, got {Q}")
    f = as_handle(f)
    x = np.asarray(x, dtype=float)
    s = _jackson_sum(f, lambda k: Q ** k * x, lambda k: Q ** k, x.shape, "Q-integral")
    return _scalar(x * (1.0 - Q) * s)


def Q_integral01(f, Q: float) -> float:
    return float(Q_integral(f, 1.0, Q))


def q_antiderivative(f, q: float) -> FunctionHandle:
    f = as_handle(f)
    return FunctionHandle(lambda x: q_integral(f, x, q), f.domain, name=f"Iq[{f.name}]")


def Q_antiderivative(f, Q: float) -> FunctionHandle:
    f = as_handle(f)
    return FunctionHandle(lambda x: Q_integral(f, x, Q), f.domain, name=f"IQ[{f.name}]")


@dataclass(frozen=True)
class QDeformation:
    """A deformation parameter together with its flavour."""

    q: float
    flavor: Literal["symmetric_q", "onesided_Q"] = "symmetric_q"

    def __post_init__(self):
        if not self.q > 0 or abs(self.q - 1.0) <= 1e-9:
            raise DomainError(f"deformation parameter must be positive and |q-1| > 1e-9, got {self.q}")
        if self.flavor not in ("symmetric_q", "onesided_Q"):
            raise DomainError(f"unknown flavor {self.flavor!r}")

    @property
    def symmetric(self) -> bool:
        return self.flavor == "symmetric_q"

    def bracket(self, x):
        return q_bracket(x, self.q) if self.symmetric else Q_bracket(x, self.q)

    def derivative(self, f) -> FunctionHandle:
        return q_derivative(f, self.q) if self.symmetric else Q_derivative(f, self.q)

    def exp(self, a: float, z: float, tol: float = SERIES_REL_TOL) -> float:
        return q_exp(a, z, self.q, tol) if self.symmetric else Q_exp(a, z, self.q, tol)
