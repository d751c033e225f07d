"""The identity suite behind ``deforma verify``.

Every check draws its random corpus from a generator seeded by
(seed, crc32(name)), so a check reports the same error whether it runs
alone or with the others.  Known disagreements between printed formulas
and literal operator algebra are reported as INFO records, never as
failures.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import dcalc, fractional, qcalc, qpotential, spectral
from .core import Grid, PolyGauss, bessel_j, gamma, parse_expression
from .core.expr import FUNCTIONS
from .core.polygauss import d_bracket_poly, dp_scale, ladder_state_raw

MODULES = ("core", "qcalc", "fractional", "dcalc", "spectral", "qpotential")


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    max_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tol)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


@dataclass(frozen=True)
class InfoRecord:
    module: str
    name: str
    text: str


_CHECKS: list[tuple[str, str, Callable]] = []
_INFOS: list[tuple[str, str, Callable]] = []


def check(module: str, name: str):
    def deco(fn):
        _CHECKS.append((module, name, fn))
        return fn
    return deco


def info(module: str, name: str):
    def deco(fn):
        _INFOS.append((module, name, fn))
        return fn
    return deco


def _rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def _poly(rng, deg=None):
    deg = int(rng.integers(1, 7)) if deg is None else deg
    return np.polynomial.Polynomial(rng.uniform(-1, 1, deg + 1))


def _rel(lhs, rhs, *scale) -> float:
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    ref = np.abs(lhs) + sum(np.abs(np.asarray(s)) for s in scale)
    ref = np.maximum(ref, 1e-300)
    return float(np.max(np.abs(lhs - rhs) / ref))


# ---------------------------------------------------------------- core

@check("core", "gamma recurrence Gamma(x+1) = x Gamma(x)")
def _(rng):
    x = rng.uniform(0.1, 20, 200)
    return max(abs(gamma(t + 1) / (t * gamma(t)) - 1) for t in x), 1e-12


@check("core", "Bessel recurrence J(nu-1) + J(nu+1) = (2 nu/x) J(nu)")
def _(rng):
    err = 0.0
    for _ in range(100):
        nu, x = rng.uniform(0.2, 4), rng.uniform(0.5, 10)
        lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x)
        rhs = 2 * nu / x * bessel_j(nu, x)
        err = max(err, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return err, 1e-10


@check("core", "PolyGauss second derivative, exact coefficients")
def _(rng):
    bad = 0
    for _ in range(20):
        ints = [int(v) for v in rng.integers(-5, 6, int(rng.integers(1, 8)))]
        ints[-1] = ints[-1] or 1
        p = PolyGauss.from_rationals(ints)
        lhs = p.differentiate().differentiate()
        # (p e)'' = (p'' - 2 xi p' + (xi^2 - 1) p) e
        c = np.polynomial.Polynomial([float(v[0]) if v else 0.0 for v in p.coeffs])
        ref = c.deriv(2) - 2 * np.polynomial.Polynomial([0, 1]) * c.deriv() + np.polynomial.Polynomial([-1, 0, 1]) * c
        got = [float(v[0]) if v else 0.0 for v in lhs.coeffs]
        refc = list(np.trim_zeros(ref.coef, "b"))
        bad += got != refc
    return float(bad), 0.0


def _random_expr(rng, depth=0) -> str:
    r = rng.random()
    if depth > 2 or r < 0.25:
        return "x" if rng.random() < 0.5 else f"{rng.uniform(0.1, 3):.3f}"
    if r < 0.45:
        fn = list(FUNCTIONS)[int(rng.integers(len(FUNCTIONS)))]
        inner = _random_expr(rng, depth + 1)
        if fn == "sqrt":
            inner = f"abs({inner})"
        if fn == "exp":
            inner = f"sin({inner})"
        return f"{fn}({inner})"
    if r < 0.55:
        return f"({_random_expr(rng, depth + 1)})^2"
    op = "+-*/"[int(rng.integers(4))]
    rhs = _random_expr(rng, depth + 1)
    if op == "/":
        rhs = f"(2 + sin({rhs}))"
    return f"({_random_expr(rng, depth + 1)} {op} {rhs})"


@check("core", "expression parser vs reference evaluation (50 expressions)")
def _(rng):
    ns = {k: getattr(np, k) for k in FUNCTIONS}
    x = rng.uniform(-2, 2, 16)
    err = 0.0
    for _ in range(50):
        text = _random_expr(rng)
        ref = eval(text.replace("^", "**"), {"__builtins__": {}}, dict(ns, x=x))  # noqa: S307
        got = parse_expression(text)(x)
        err = max(err, _rel(got, ref + 0 * x))
    return err, 1e-14


# ---------------------------------------------------------------- qcalc

QS = (0.5, 0.8, 1.3, 2.0)
QS_ONESIDED = (0.5, 0.8, 1.3, 1.7)


def _corpus(rng, count=12, bases=QS):
    for _ in range(count):
        yield _poly(rng), _poly(rng), float(rng.choice(bases)), rng.uniform(0.2, 3, 8)


@check("qcalc", "q product rule, first form")
def _(rng):
    err = 0.0
    for f, g, q, x in _corpus(rng):
        lhs = qcalc.q_derivative(lambda t: f(t) * g(t), q)(x)
        a, b = qcalc.q_derivative(f, q)(x) * g(x / q), f(q * x) * qcalc.q_derivative(g, q)(x)
        err = max(err, _rel(lhs, a + b, a, b))
    return err, 1e-9


@check("qcalc", "q product rule, second form")
def _(rng):
    err = 0.0
    for f, g, q, x in _corpus(rng):
        lhs = qcalc.q_derivative(lambda t: f(t) * g(t), q)(x)
        a, b = qcalc.q_derivative(g, q)(x) * f(x / q), g(q * x) * qcalc.q_derivative(f, q)(x)
        err = max(err, _rel(lhs, a + b, a, b))
    return err, 1e-9


@check("qcalc", "Q product rule, first form")
def _(rng):
    err = 0.0
    for f, g, Q, x in _corpus(rng, bases=QS_ONESIDED):
        lhs = qcalc.Q_derivative(lambda t: f(t) * g(t), Q)(x)
        a, b = qcalc.Q_derivative(f, Q)(x) * g(Q * x), f(x) * qcalc.Q_derivative(g, Q)(x)
        err = max(err, _rel(lhs, a + b, a, b))
    return err, 1e-9


@check("qcalc", "Q product rule, second form")
def _(rng):
    err = 0.0
    for f, g, Q, x in _corpus(rng, bases=QS_ONESIDED):
        lhs = qcalc.Q_derivative(lambda t: f(t) * g(t), Q)(x)
        a, b = qcalc.Q_derivative(f, Q)(x) * g(x), f(Q * x) * qcalc.Q_derivative(g, Q)(x)
        err = max(err, _rel(lhs, a + b, a, b))
    return err, 1e-9


@check("qcalc", "Q quotient rule")
def _(rng):
    err = 0.0
    for f, g, Q, x in _corpus(rng, bases=QS_ONESIDED):
        g2 = lambda t, g=g: 3.0 + np.sin(g(t))  # bounded away from 0
        lhs = qcalc.Q_derivative(lambda t: f(t) / g2(t), Q)(x)
        num_a = qcalc.Q_derivative(f, Q)(x) * g2(x)
        num_b = f(x) * qcalc.Q_derivative(g2, Q)(x)
        den = g2(Q * x) * g2(x)
        err = max(err, _rel(lhs, (num_a - num_b) / den, num_a / den, num_b / den))
    return err, 1e-9


def _smooth(rng):
    p = _poly(rng)
    return lambda t: np.exp(np.sin(p(t)))


@check("qcalc", "Q second derivative closed form vs nested")
def _(rng):
    err = 0.0
    for _ in range(12):
        f, Q, x = _smooth(rng), float(rng.choice(QS_ONESIDED)), rng.uniform(0.2, 3, 8)
        Q2 = lambda t: (f(Q * Q * t) - (Q + 1) * f(Q * t) + Q * f(t)) / ((Q - 1) ** 2 * Q * t * t)
        err = max(err, _rel(Q2(x), qcalc.iterate(qcalc.Q_derivative, f, 2, Q)(x)))
    return err, 1e-9


@check("qcalc", "q second derivative closed form vs nested")
def _(rng):
    err = 0.0
    for _ in range(12):
        f, q, x = _smooth(rng), float(rng.choice(QS)), rng.uniform(0.2, 3, 8)
        err = max(err, _rel(qcalc.q_derivative_nested2(f, q)(x), qcalc.iterate(qcalc.q_derivative, f, 2, q)(x)))
    return err, 1e-9


@check("qcalc", "Q n-th derivative closed form vs n-fold nesting (n <= 4)")
def _(rng):
    err = 0.0
    for _ in range(6):
        f, Q, x = _smooth(rng), float(rng.choice(QS_ONESIDED)), rng.uniform(0.5, 2, 6)
        for n in (1, 2, 3, 4):
            # near a zero of the n-th derivative both routes cancel; measure
            # relative to the size of the summands instead
            scale = sum(qcalc.Q_binomial(n, k, Q) * Q ** (k * (k - 1) / 2) * np.abs(f(Q ** (n - k) * x))
                        for k in range(n + 1)) / np.abs((Q - 1) ** n * Q ** (n * (n - 1) / 2) * x ** n)
            lhs = qcalc.Q_derivative_n(f, Q, n)(x)
            err = max(err, _rel(lhs, qcalc.iterate(qcalc.Q_derivative, f, n, Q)(x), scale))
    return err, 1e-9


def _sym_scale(f, q, n, x):
    # magnitude of the two summands in (f(q^n x) - f(q^-n x)) / ((q^n - q^-n) x)
    qn = q ** n
    return (np.abs(f(qn * x)) + np.abs(f(x / qn))) / np.abs((qn - 1 / qn) * x)


@check("qcalc", "D^{q^2} closed form vs two-term average")
def _(rng):
    err = 0.0
    for _ in range(12):
        f, q, x = _smooth(rng), float(rng.choice(QS)), rng.uniform(0.2, 3, 8)
        closed = (f(q * q * x) - f(x / (q * q))) / ((q * q - 1 / (q * q)) * x)
        err = max(err, _rel(closed, qcalc.q_derivative_qn_average(f, q, 2)(x), _sym_scale(f, q, 2, x)))
    return err, 1e-9


@check("qcalc", "D^{q^n} n-term average vs direct (n = 3, 4)")
def _(rng):
    err = 0.0
    for _ in range(12):
        f, q, x = _smooth(rng), float(rng.choice(QS)), rng.uniform(0.2, 3, 8)
        for n in (3, 4):
            direct = qcalc.q_derivative_qn(f, q, n)(x)
            err = max(err, _rel(direct, qcalc.q_derivative_qn_average(f, q, n)(x), _sym_scale(f, q, n, x)))
    return err, 1e-9


@check("qcalc", "power composition D^q f(x^n) = [n] x^(n-1) D^{q^n} f")
def _(rng):
    err = 0.0
    for _ in range(12):
        m, n = int(rng.integers(1, 6)), int(rng.choice([2, 3]))
        q, x = float(rng.choice(QS)), rng.uniform(0.3, 1.5, 6)
        f = lambda u, m=m: u ** m
        lhs = qcalc.q_derivative(lambda t: f(t ** n), q)(x)
        rhs = qcalc.q_bracket(n, q) * x ** (n - 1) * qcalc.q_derivative_qn(f, q, n)(x ** n)
        err = max(err, _rel(lhs, rhs))
    return err, 1e-9


@check("qcalc", "q fundamental theorem, derivative of the integral")
def _(rng):
    err = 0.0
    for _ in range(12):
        f, q, x = _poly(rng), float(rng.choice((0.5, 0.6, 0.8))), rng.uniform(0.2, 2, 6)
        err = max(err, _rel(qcalc.q_derivative(qcalc.q_antiderivative(f, q), q)(x), f(x)))
    return err, 1e-9


@check("qcalc", "q fundamental theorem, integral of the derivative")
def _(rng):
    err = 0.0
    for _ in range(12):
        f, q, x = _poly(rng), float(rng.choice((0.5, 0.6, 0.8))), rng.uniform(0.2, 2, 6)
        got = qcalc.q_integral(qcalc.q_derivative(f, q), x, q)
        err = max(err, _rel(got, f(x) - f(0.0), f(x), f(0.0)))
    return err, 1e-9


@check("qcalc", "Q fundamental theorem, derivative of the integral")
def _(rng):
    err = 0.0
    for _ in range(12):
        f, Q, x = _poly(rng), float(rng.choice((0.5, 0.6, 0.8))), rng.uniform(0.2, 2, 6)
        err = max(err, _rel(qcalc.Q_derivative(qcalc.Q_antiderivative(f, Q), Q)(x), f(x)))
    return err, 1e-9


@check("qcalc", "bracket limits at q = 1 +- 1e-7")
def _(rng):
    err = 0.0
    for n in range(0, 11):
        for q in (1 + 1e-7, 1 - 1e-7):
            err = max(err, abs(qcalc.q_bracket(n, q) - n), abs(qcalc.Q_bracket(n, q) - n))
    return err, 1e-5


@check("qcalc", "q bracket symmetry under q -> 1/q")
def _(rng):
    x, q = rng.uniform(-5, 5, 50), rng.uniform(0.2, 5, 50)
    return max(_rel(qcalc.q_bracket(a, b), qcalc.q_bracket(a, 1 / b)) for a, b in zip(x, q)), 1e-13


@check("qcalc", "[x]_Q = q^(x-1) [x]_q at Q = q^2")
def _(rng):
    x, q = rng.uniform(-4, 6, 50), rng.uniform(0.3, 3, 50)
    return max(_rel(qcalc.Q_bracket(a, b * b), b ** (a - 1) * qcalc.q_bracket(a, b)) for a, b in zip(x, q)), 1e-12


@check("qcalc", "q- and Q-exponential eigenfunctions of their derivatives")
def _(rng):
    err = 0.0
    for kind, op in (("q", qcalc.q_derivative), ("Q", qcalc.Q_derivative)):
        for _ in range(4):
            a, q = rng.uniform(-1, 1), float(rng.choice((0.8, 1.2, 1.5)))
            e = qcalc.exp_handle(kind, a, q)
            x = rng.uniform(0.2, 1.2, 4)
            err = max(err, _rel(op(e, q)(x), a * e(x)))
    return err, 1e-9


@check("qcalc", "e_Q(x) e_{1/Q}(-x) = 1")
def _(rng):
    err = 0.0
    for _ in range(10):
        x, Q = rng.uniform(-1, 1), rng.uniform(1.1, 2.0)
        err = max(err, abs(qcalc.Q_exp(1, x, Q) * qcalc.Q_exp(1, -x, 1 / Q) - 1))
    return err, 1e-9


# ---------------------------------------------------------------- fractional

@check("fractional", "Caputo of x^(n alpha) vs power rule (h = x/512)")
def _(rng):
    err = 0.0
    for n in (1, 2, 3):
        for a in (0.3, 0.5, 0.8):
            for x in (0.5, 1.0, 2.0):
                got = fractional.caputo(lambda t, n=n, a=a: np.abs(t) ** (n * a), a, x, x / 512)
                err = max(err, abs(got / (fractional.caputo_power_coeff(n, a) * x ** ((n - 1) * a)) - 1))
    return err, 1e-3


@check("fractional", "Mittag-Leffler termwise Caputo eigen-relation")
def _(rng):
    a, z, K = 0.5, 0.8, 60
    lhs = sum(fractional.caputo_power_coeff(k, a) * z ** ((k - 1) * a) / gamma(1 + k * a) for k in range(1, K + 1))
    rhs = sum(z ** (k * a) / gamma(1 + k * a) for k in range(K))
    return abs(lhs - rhs) / rhs, 1e-10


@check("fractional", "Mittag-Leffler at alpha = 1 vs exp")
def _(rng):
    z = np.concatenate([[0.0, 5.0], rng.uniform(0, 5, 30)])
    return _rel(fractional.mittag_leffler(1.0, z), np.exp(z)), 1e-10


@check("fractional", "fractional bracket equals the Caputo power coefficient")
def _(rng):
    bad = sum(fractional.frac_bracket(n, a) != fractional.caputo_power_coeff(n, a)
              for n in range(12) for a in rng.uniform(0.05, 1, 5))
    return float(bad), 0.0


@check("fractional", "Riesz and Feller linearity")
def _(rng):
    f = lambda t: np.exp(-t * t / 2)
    g = lambda t: t * np.exp(-t * t)
    err = 0.0
    for _ in range(4):
        a, b, x = rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-1, 1)
        s = lambda t: a * f(t) + b * g(t)
        for op, alpha in ((fractional.riesz, rng.uniform(0.2, 1.8)), (fractional.feller, rng.uniform(0.1, 0.9))):
            lhs = op(s, alpha, x)
            ra, rb = a * op(f, alpha, x), b * op(g, alpha, x)
            err = max(err, _rel(lhs, ra + rb, ra, rb))
    return err, 1e-10


@check("fractional", "Riesz of an even function is even")
def _(rng):
    f = lambda t: np.exp(-t * t / 2) * np.cos(t)
    err = 0.0
    for _ in range(4):
        x, alpha = rng.uniform(0.1, 2), rng.uniform(0.2, 1.8)
        err = max(err, abs(fractional.riesz(f, alpha, x) - fractional.riesz(f, alpha, -x)))
    return err, 1e-9


# ---------------------------------------------------------------- dcalc

DS = (0.5, 1.2, 1.8)


@check("dcalc", "D product rule as printed")
def _(rng):
    err = 0.0
    for _ in range(6):
        f, g, D = _poly(rng, int(rng.integers(1, 6))), _poly(rng, int(rng.integers(1, 6))), float(rng.choice(DS))
        xi = rng.uniform(0.2, 2, 20) * rng.choice([-1, 1], 20)
        lhs = dcalc.d_derivative(lambda t: f(t) * g(t), D)(xi)
        t1 = g(xi) * dcalc.d_derivative(f, D)(xi)
        t2 = dcalc.d_derivative(g, D)(xi) * f(-xi)
        t3 = g.deriv()(xi) * (f(xi) - f(-xi))
        err = max(err, _rel(lhs, t1 + t2 + t3, t1, t2, t3))
    return err, 1e-8


@check("dcalc", "D integration by parts on [0.5, 2]")
def _(rng):
    err = 0.0
    lo, hi = 0.5, 2.0
    for _ in range(6):
        m, k, D = int(rng.integers(0, 4)), int(rng.integers(0, 4)), float(rng.choice((0.8, 1.3, 1.5)))
        f = lambda t, m=m: t ** m
        g = lambda t, k=k: t ** k
        gp = lambda t, k=k: k * t ** (k - 1) if k else 0 * t
        # d_D t^m = [m]_D t^(m-1), so both sides stay regular at xi = 0
        df = lambda t, m=m: dcalc.d_bracket(m, D) * t ** (m - 1) if m else 0 * t
        dg = lambda t, k=k: dcalc.d_bracket(k, D) * t ** (k - 1) if k else 0 * t

        def span(F):
            I = dcalc.d_antiderivative(F, D, hi)
            return I(hi) - I(lo)

        lhs = span(lambda t: g(t) * df(t))
        a = f(hi) * g(hi) - f(lo) * g(lo)
        b = span(lambda t: dg(t) * f(-t))
        c = span(lambda t: gp(t) * (f(t) - f(-t)))
        err = max(err, _rel(lhs, a - b - c, a, b, c))
    return err, 1e-6


@check("dcalc", "number operator {a+, a}/2 - D/2 = N (n < N)")
def _(rng):
    err = 0.0
    for D in (0.5, 1.0, 1.5):
        rep = dcalc.ladder(D, "D", 16)
        M = 0.5 * rep.anticommutator() - 0.5 * D * np.eye(rep.dim) - rep.number
        err = max(err, float(np.max(np.abs(M[:-1, :-1]))))
    return err, 1e-12


@check("dcalc", "Wigner relations on n <= N-2")
def _(rng):
    err = 0.0
    for D in (0.5, 1.0, 1.5):
        err = max(err, *dcalc.wigner_residuals(dcalc.ladder(D, "D", 64)))
    return err, 1e-11


@check("dcalc", "a_D |n> = sqrt([n]_D) |n-1> in exact PolyGauss arithmetic")
def _(rng):
    bad = 0
    for n in range(1, 11):
        lhs = ladder_state_raw(n).lower_raw()
        rhs = ladder_state_raw(n - 1).times(dp_scale(d_bracket_poly(n), 2))
        bad += not lhs.exact_equal(rhs)
    return float(bad), 0.0


@check("dcalc", "D-factorial Gamma closed form vs bracket product")
def _(rng):
    err = 0.0
    for D in rng.uniform(0.05, 1.95, 6):
        for n in range(0, 30):
            err = max(err, abs(dcalc.d_factorial_closed(n, D) / dcalc.d_factorial(n, D) - 1))
    return err, 1e-12


@check("dcalc", "coherent state normalisation and eigenvalue")
def _(rng):
    c = dcalc.coherent_coeffs(0.8, 1.5, 40)
    rep = dcalc.ladder(1.5, "D", 40)
    return max(abs(np.sum(np.abs(c) ** 2) - 1), float(np.max(np.abs(rep.a @ c - 0.8 * c)))), 1e-8


@check("dcalc", "D-exponential eigenfunction of d_D")
def _(rng):
    err = 0.0
    for _ in range(5):
        lam, D = rng.uniform(-1, 1), rng.uniform(0.3, 1.7)
        E = dcalc.d_exp_handle(D, lam)
        xi = rng.uniform(0.3, 1.5, 4) * rng.choice([-1, 1], 4)
        err = max(err, _rel(dcalc.d_derivative(E, D)(xi), lam * E(xi)))
    return err, 1e-6


# ---------------------------------------------------------------- spectral

@check("spectral", "Dunkl Hamiltonian on eigenfunctions: ratio n + D/2 (n <= 6)")
def _(rng):
    xi = np.linspace(0.3, 3, 41)
    err = 0.0
    for D in (0.5, 1.0, 1.5):
        for n in range(7):
            e = dcalc.eigenfunction(n, D)
            err = max(err, float(np.max(np.abs(spectral.dunkl_apply(e, D)(xi) / e(xi, D) - n - D / 2))))
    return err, 1e-7


@check("spectral", "ladder matrix eigenvalues n + D/2 (N = 64)")
def _(rng):
    err = 0.0
    for D in (0.5, 1.0, 1.5):
        e = spectral.d_oscillator_matrix_energies(D, 64).energies[:63]
        err = max(err, float(np.max(np.abs(e - np.arange(63) - D / 2))))
    return err, 1e-10


@check("spectral", "weighted orthogonality of eigenfunctions (m, n <= 4)")
def _(rng):
    err = 0.0
    for D in (0.5, 1.0, 1.5):
        es = [dcalc.eigenfunction(n, D) for n in range(5)]
        for m in range(5):
            for n in range(m + 1, 5):
                err = max(err, abs(dcalc.weighted_inner(es[m], es[n], D)) / math.pi ** (D / 2))
    return err, 1e-8


@check("spectral", "weighted volume of [-R, R] vs pi^(D/2) R^D / Gamma(1 + D/2)")
def _(rng):
    return max(abs(dcalc.weighted_volume(2.0, D) / dcalc.ball_volume(2.0, D) - 1) for D in (0.5, 1.0, 1.5)), 1e-8


@check("spectral", "fractional oscillator at alpha = 1: Richardson order >= 1.8")
def _(rng):
    e = [spectral.fractional_oscillator_numeric(1.0, 8.0, N, 1).energies[0] for N in (200, 400, 800)]
    order = math.log2(abs(e[0] - e[1]) / abs(e[1] - e[2]))
    return max(0.0, 1.8 - order), 0.0


@check("spectral", "free particle at D = 1 has constant modulus")
def _(rng):
    xi = rng.uniform(-6, 6, 50)
    psi = spectral.free_particle_psi(rng.uniform(0.5, 2), 1.0)
    m = np.abs(psi(xi))
    return float(np.max(np.abs(m - m[0]))), 1e-8


@check("spectral", "free particle Hamiltonian residual at D = 1.4")
def _(rng):
    xi = np.linspace(0.5, 6, 56)
    p = 1.3
    psi = spectral.free_particle_psi(p, 1.4)
    res = spectral.dunkl_apply(psi, 1.4, include_potential=False)(xi) - 0.5 * p * p * psi(xi)
    return float(np.max(np.abs(res) / np.abs(psi(xi)))), 1e-4


# ---------------------------------------------------------------- qpotential

@check("qpotential", "energy balance Qp + xi^2/2 = n + D/2 (n <= 4)")
def _(rng):
    xi = np.linspace(0.3, 3, 41)
    err = 0.0
    for D in (0.5, 1.0, 1.5):
        for n in range(5):
            parity = "even" if n % 2 == 0 else "odd"
            q = qpotential.qp_deformed(dcalc.eigenfunction(n, D), D, parity, xi)
            err = max(err, float(np.max(np.abs(q + 0.5 * xi * xi - n - D / 2))))
    return err, 1e-6


@check("qpotential", "even sector at D = 1 equals the standard QP")
def _(rng):
    xi = rng.uniform(0.2, 3, 30)
    err = 0.0
    for w in (0.5, 1.0, 2.0):
        r = lambda t, w=w: np.exp(-w * t * t / 2)
        err = max(err, _rel(qpotential.qp_deformed(r, 1.0, "even", xi), qpotential.qp_standard(r, xi)))
    return err, 1e-10


@check("qpotential", "relation check c(xi) = 0 under literal composition")
def _(rng):
    grid = Grid.uniform(0.3, 3, 41)
    err = 0.0
    for D in (0.5, 1.0, 1.5):
        for n in range(5):
            parity = "even" if n % 2 == 0 else "odd"
            prof = qpotential.qp_relation_check(dcalc.eigenfunction(n, D), D, parity, grid)
            err = max(err, prof.meta["max_abs_c"])
    return err, 1e-7


@check("qpotential", "fractional QP on Mittag-Leffler inputs is -lam^2/2")
def _(rng):
    x = np.linspace(0.1, 2, 20)
    err = 0.0
    for lam in (0.5, 1.0):
        for a in (0.4, 0.7):
            s = fractional.FractionalPowerSeries.mittag_leffler(a, lam)
            err = max(err, float(np.max(np.abs(qpotential.qp_fractional(s, a, x) + lam * lam / 2))))
    return err, 1e-8


@check("qpotential", "MRL QP at alpha = 1 equals the standard QP")
def _(rng):
    x = rng.uniform(0.2, 3, 20)
    r = lambda t: np.exp(-t * t / 2) * (2 + np.cos(t))
    return _rel(qpotential.qp_mrl(r, 1.0, rng.uniform(0.5, 4), x), qpotential.qp_standard(r, x)), 1e-10


# ---------------------------------------------------------------- INFO records

@info("dcalc", "d-factorial closed form")
def _():
    D = 1.5
    bad = [n for n in range(0, 11) if abs(dcalc.d_factorial_printed(n, D) / dcalc.d_factorial(n, D) - 1) > 1e-12]
    return ("printed form uses (n/2) and ((n-1)/2) where (n/2)! and ((n-1)/2)! are needed; "
            f"at D={D} it disagrees with the bracket product for n in {bad} (n <= 10); "
            "with the factorials restored it matches to 1e-12")


@info("dcalc", "product-rule printed form")
def _():
    return ("d_D(fg) = g d_D f + (d_D g) Rf + g' (1-R) f holds as printed (read d_d as d_D); "
            "integration by parts holds as int g d_D f = fg - int (d_D g) Rf - int g' (1-R) f")


@info("spectral", "WKB bracket exponent")
def _():
    parts = []
    for a in (0.5, 0.8, 1.0, 1.5):
        w = spectral.wkb_energies(a, 0).energies[0]
        v = spectral.wkb_energies_no_exponent(a, 0).energies[0]
        parts.append(f"alpha={a}: E0={w:.10f} (with exponent) vs {v:.10f} (without)")
    return ("; ".join(parts) + "; the variants coincide at alpha=1, the exponent follows from WKB quantisation")


@info("qpotential", "D-derivative-square constant")
def _():
    D = 1.5
    printed = qpotential.printed_relation_constant(D)
    line1 = (D - 1) * (D - 2)
    line2 = (D - 1) * (2 - D)
    return (f"literal d_D d_D gives c(xi)=0; printed relation gives c=(D-1)(2D-1)/2={printed:.6f} at D={D}; "
            f"odd-sector square: first printed line (D-1)(D-2)={line1:.6f}, second (D-1)(2-D)={line2:.6f}, "
            f"literal composition -(D-1)={-(D - 1):.6f}")


# ---------------------------------------------------------------- runner

def run(seed: int = 0, only: Iterable[str] | None = None) -> tuple[list[CheckResult], list[InfoRecord]]:
    wanted = set(only) if only else set(MODULES)
    unknown = wanted - set(MODULES)
    if unknown:
        raise ValueError(f"unknown module(s): {', '.join(sorted(unknown))}")
    results = []
    for module, name, fn in _CHECKS:
        if module in wanted:
            err, tol = fn(_rng(seed, name))
            results.append(CheckResult(module, name, float(err), float(tol)))
    infos = [InfoRecord(m, n, fn()) for m, n, fn in _INFOS if m in wanted]
    return results, infos


def format_report(results: list[CheckResult], infos: list[InfoRecord]) -> str:
    lines = []
    for r in results:
        lines.append(f"{r.status}  {r.module:<10}  {r.name:<64}  max_err={r.max_error:.3e}  tol={r.tol:.0e}")
    for i in infos:
        lines.append(f"INFO  {i.module:<10}  {i.name}: {i.text}")
    ok = all(r.passed for r in results)
    failed = sum(not r.passed for r in results)
    lines.append(f"RESULT {'PASS' if ok else 'FAIL'}  {len(results)} checks, {failed} failed, {len(infos)} info")
    return "\n".join(lines) + "\n"
