"""Exact arithmetic on functions p(xi) exp(-xi^2/2).

Each coefficient of ``p`` is itself a polynomial in the dimension
parameter D with rational coefficients (a :data:`DPoly`), so the ladder
operators of the reflection-deformed calculus act exactly and one
computation serves every D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..errors import DomainError
from .handles import FunctionHandle

# A polynomial in D: ascending coefficient tuple of Fractions, no trailing zeros.
DPoly = tuple


def dpoly(*coeffs) -> DPoly:
    c = [Fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


ZERO: DPoly = ()
ONE: DPoly = (Fraction(1),)
D_MINUS_1: DPoly = (Fraction(-1), Fraction(1))


def dp_add(a: DPoly, b: DPoly) -> DPoly:
    n = max(len(a), len(b))
    return dpoly(*((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))


def dp_neg(a: DPoly) -> DPoly:
    return tuple(-v for v in a)


def dp_sub(a: DPoly, b: DPoly) -> DPoly:
    return dp_add(a, dp_neg(b))


def dp_mul(a: DPoly, b: DPoly) -> DPoly:
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return dpoly(*out)


def dp_scale(a: DPoly, s) -> DPoly:
    s = Fraction(s)
    return dpoly(*(v * s for v in a))


def dp_eval(a: DPoly, D: float) -> float:
    acc = 0.0
    for v in reversed(a):
        acc = acc * D + float(v)
    return acc


def d_bracket_poly(n: int) -> DPoly:
    """[n]_D as a polynomial in D: n (even n), n - 1 + D (odd n)."""
    return dpoly(n) if n % 2 == 0 else dpoly(n - 1, 1)


def _trim(coeffs: Iterable[DPoly]) -> tuple:
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class PolyGauss:
    """``scale * sum_k coeffs[k](D) * xi**k * exp(-xi**2/2)``.

    ``scale`` is a float multiplier kept outside the exact part so that
    irrational normalisations (square roots of factorials) do not spoil
    the rational arithmetic.
    """

    coeffs: tuple = ()
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(tuple(dpoly(*c) if not isinstance(c, tuple) else c
                                                       for c in self.coeffs)))

    @classmethod
    def from_rationals(cls, values: Sequence, scale: float = 1.0) -> "PolyGauss":
        """Coefficients that do not depend on D."""
        return cls(tuple(dpoly(v) for v in values), scale)

    @classmethod
    def gaussian(cls) -> "PolyGauss":
        return cls((ONE,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def parity(self) -> str:
        odd = any(c for k, c in enumerate(self.coeffs) if k % 2)
        even = any(c for k, c in enumerate(self.coeffs) if k % 2 == 0)
        if odd and even:
            return "none"
        return "odd" if odd else "even"

    def exact_equal(self, other: "PolyGauss") -> bool:
        return self.coeffs == other.coeffs

    # exact operations ------------------------------------------------------

    def _with(self, coeffs) -> "PolyGauss":
        return PolyGauss(tuple(coeffs), self.scale)

    def __add__(self, other: "PolyGauss") -> "PolyGauss":
        if self.scale != other.scale:
            raise DomainError("cannot add PolyGauss values with different float scales")
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return self._with(dp_add(u, v) for u, v in zip(a, b))

    def __neg__(self) -> "PolyGauss":
        return self._with(dp_neg(c) for c in self.coeffs)

    def __sub__(self, other: "PolyGauss") -> "PolyGauss":
        return self + (-other)

    def times(self, factor: DPoly) -> "PolyGauss":
        """Multiply every coefficient by a polynomial in D."""
        return self._with(dp_mul(c, factor) for c in self.coeffs)

    def rescaled(self, scale: float) -> "PolyGauss":
        return PolyGauss(self.coeffs, self.scale * scale)

    def multiply_by_xi(self) -> "PolyGauss":
        return self._with((ZERO,) + self.coeffs) if self.coeffs else self

    def differentiate(self) -> "PolyGauss":
        """(p e^{-xi^2/2})' = (p' - xi p) e^{-xi^2/2}."""
        c = self.coeffs
        n = len(c) + 1
        out = [ZERO] * n
        for k, ck in enumerate(c):
            if k >= 1:
                out[k - 1] = dp_add(out[k - 1], dp_scale(ck, k))
            out[k + 1] = dp_sub(out[k + 1], ck)
        return self._with(out)

    def reflect(self) -> "PolyGauss":
        """xi -> -xi."""
        return self._with(c if k % 2 == 0 else dp_neg(c) for k, c in enumerate(self.coeffs))

    def odd_part(self) -> "PolyGauss":
        return self._with(c if k % 2 else ZERO for k, c in enumerate(self.coeffs))

    def even_part(self) -> "PolyGauss":
        return self._with(ZERO if k % 2 else c for k, c in enumerate(self.coeffs))

    def divide_odd_part_by_xi(self) -> "PolyGauss":
        """(odd part of p) / xi; the odd part never has a constant term."""
        odd = self.odd_part().coeffs
        return self._with(odd[1:])

    def d_derivative(self) -> "PolyGauss":
        """d/dxi + ((D-1)/(2 xi)) (1 - R), reflection applied literally."""
        diff = self - self.reflect()  # (1 - R) f, purely odd
        reflection_term = diff.divide_odd_part_by_xi().times(dp_scale(D_MINUS_1, Fraction(1, 2)))
        return self.differentiate() + reflection_term

    def raise_raw(self) -> "PolyGauss":
        """sqrt(2) a^dagger_D = xi - d_D."""
        return self.multiply_by_xi() - self.d_derivative()

    def lower_raw(self) -> "PolyGauss":
        """sqrt(2) a_D = xi + d_D."""
        return self.multiply_by_xi() + self.d_derivative()

    # numeric evaluation ----------------------------------------------------

    def numeric_coeffs(self, D: float) -> np.ndarray:
        return np.array([dp_eval(c, D) for c in self.coeffs], dtype=float)

    def __call__(self, xi, D: float):
        c = self.numeric_coeffs(D)
        xi = np.asarray(xi, dtype=float)
        p = np.polynomial.polynomial.polyval(xi, c) if c.size else np.zeros_like(xi)
        out = self.scale * p * np.exp(-0.5 * xi * xi)
        return out[()] if np.ndim(out) == 0 else out

    def to_handle(self, D: float, depth: int = 3) -> FunctionHandle:
        """FunctionHandle at fixed D carrying exact derivatives ``depth`` deep."""
        deriv = self.differentiate().to_handle(D, depth - 1) if depth > 0 else None
        par = self.parity()
        return FunctionHandle(lambda xi, s=self, D=D: s(xi, D), parity_hint=par, derivative=deriv,
                              name="polygauss")


def d_factorial_poly(n: int) -> DPoly:
    out = ONE
    for k in range(1, n + 1):
        out = dp_mul(out, d_bracket_poly(k))
    return out


def ladder_state_raw(n: int) -> PolyGauss:
    """(xi - d_D)^n exp(-xi^2/2), the unnormalised n-th ladder state."""
    state = PolyGauss.gaussian()
    for _ in range(n):
        state = state.raise_raw()
    return state


def ladder_state_norm(n: int, D: float) -> float:
    """1/sqrt(2^n [n]_D!) turning :func:`ladder_state_raw` into (a^dagger)^n |0> / sqrt([n]_D!)."""
    return 1.0 / math.sqrt(2.0 ** n * dp_eval(d_factorial_poly(n), D))
