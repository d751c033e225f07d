"""Function handles, uniform grids, sampled profiles and finite differences."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Literal, Mapping

import numpy as np

from ..errors import DomainError

Parity = Literal["even", "odd", "none"]

# 4th-order central stencils; the second derivative uses a larger step
# because its roundoff grows like eps/h^2.
FD_STEP_1 = 1e-4
FD_STEP_2 = 1e-3


@dataclass(frozen=True)
class FunctionHandle:
    """A deterministic real -> complex evaluator.

    ``evaluator`` should accept numpy arrays as well as scalars.  When an
    analytic derivative is known it is carried in ``derivative`` and the
    finite-difference helpers use it instead of a stencil.
    """

    evaluator: Callable[[Any], Any]
    domain: tuple[float, float] = (-math.inf, math.inf)
    parity_hint: Parity = "none"
    derivative: "FunctionHandle | None" = None
    name: str = ""

    def __call__(self, x):
        return self.evaluator(x)

    def contains(self, x) -> bool:
        lo, hi = self.domain
        x = np.asarray(x)
        return bool(np.all((x >= lo) & (x <= hi)))

    def scaled(self, c: float) -> "FunctionHandle":
        """x -> f(c x)."""
        f = self.evaluator
        lo, hi = self.domain
        dom = tuple(sorted((lo / c, hi / c))) if c != 0 else (-math.inf, math.inf)
        return FunctionHandle(lambda x: f(c * x), dom, self.parity_hint, name=f"{self.name}({c}x)")

    def reflected(self) -> "FunctionHandle":
        """x -> f(-x)."""
        f = self.evaluator
        lo, hi = self.domain
        return FunctionHandle(lambda x: f(-x), (-hi, -lo), self.parity_hint, name=f"R{self.name}")


def as_handle(f, **kwargs) -> FunctionHandle:
    """Wrap plain callables; FunctionHandles and PolyGauss pass through."""
    if isinstance(f, FunctionHandle):
        return f
    to_handle = getattr(f, "to_handle", None)
    if to_handle is not None:
        return to_handle()
    if not callable(f):
        raise TypeError(f"expected a callable, got {type(f).__name__}")
    return FunctionHandle(f, **kwargs)


def d1(f, x, h: float = FD_STEP_1):
    """First derivative: analytic if available, else 4th-order central difference."""
    deriv = getattr(f, "derivative", None)
    if deriv is not None:
        return deriv(x)
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def d2(f, x, h: float = FD_STEP_2):
    deriv = getattr(f, "derivative", None)
    if deriv is not None:
        return d1(deriv, x)
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def derivative_handle(f, h: float = FD_STEP_1) -> FunctionHandle:
    f = as_handle(f)
    if f.derivative is not None:
        return f.derivative
    return FunctionHandle(lambda x: d1(f, x, h), f.domain, name=f"d{f.name}")


@dataclass(frozen=True)
class Grid:
    """Uniform, strictly increasing abscissae."""

    abscissae: np.ndarray

    def __post_init__(self):
        x = np.array(self.abscissae, dtype=float)
        if x.ndim != 1 or x.size < 2:
            raise DomainError("a grid needs at least two abscissae")
        steps = np.diff(x)
        h = (x[-1] - x[0]) / (x.size - 1)
        if h <= 0 or np.max(np.abs(steps - h)) > 1e-12 * max(abs(h), np.max(np.abs(x))):
            raise DomainError("grid abscissae must be uniform and strictly increasing")
        x.setflags(write=False)
        object.__setattr__(self, "abscissae", x)

    @classmethod
    def uniform(cls, lo: float, hi: float, n: int) -> "Grid":
        return cls(np.linspace(lo, hi, int(n)))

    @classmethod
    def symmetric(cls, half_width: float, n: int) -> "Grid":
        return cls.uniform(-half_width, half_width, n)

    @property
    def spacing(self) -> float:
        x = self.abscissae
        return float((x[-1] - x[0]) / (x.size - 1))

    def __len__(self) -> int:
        return self.abscissae.size


@dataclass(frozen=True)
class Profile:
    """Values sampled on a grid, with the parameters that produced them."""

    grid: Grid
    values: np.ndarray
    meta: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != self.grid.abscissae.shape:
            raise DomainError("profile values must match the grid length")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "meta", MappingProxyType(dict(self.meta)))

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    @property
    def imag(self) -> np.ndarray:
        return self.values.imag
