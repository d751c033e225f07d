"""Oscillator spectra, free-particle states and the Dunkl Hamiltonian."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Literal, Mapping

import numpy as np
from scipy.linalg import eigh

from . import kernels
from .core.handles import FunctionHandle, Grid, Profile, as_handle, d1, d2
from .core.polygauss import PolyGauss
from .core.special import BESSEL_MAX_X, gamma, rgamma
from .dcalc import check_D, d_bracket, ladder, sigma
from .errors import DomainError, GridTooCoarseError, RangeError
from .fractional import riesz_matrix
from .qcalc import q_bracket

MAX_GRID = 1000
MIN_HALF_MAX_POINTS = 8

Method = Literal["exact_ladder", "wkb", "numeric_grid", "q_exact"]


@dataclass(frozen=True)
class SpectrumResult:
    energies: np.ndarray
    method: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        e = np.array(self.energies, dtype=float)
        e.setflags(write=False)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    def __len__(self) -> int:
        return self.energies.size

    def __getitem__(self, n):
        return self.energies[n]


# -- spectra -------------------------------------------------------------------

def q_oscillator_energies(q: float, nmax: int) -> SpectrumResult:
    """E(n) = ([n]_q + [n+1]_q)/2 for n = 0..nmax (hbar omega = 1)."""
    n = np.arange(int(nmax) + 1)
    e = 0.5 * (q_bracket(n, q) + q_bracket(n + 1, q))
    return SpectrumResult(e, "q_exact", {"q": q})


def _wkb_prefactor(alpha: float) -> float:
    return alpha * gamma((1.0 + alpha) / (2.0 * alpha)) / gamma(1.0 / (2.0 * alpha))


def _check_wkb_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha must lie in (0, 2], got {alpha}")
    return alpha


def wkb_energies(alpha: float, nmax: int) -> SpectrumResult:
    """E'(n, alpha) = (n + 1/2)^alpha pi^(alpha/2) [alpha Gamma((1+alpha)/2alpha) / Gamma(1/2alpha)]^alpha.

    The bracket carries the power alpha; that is what a direct WKB
    quantisation of |p|^alpha + |x|^(2 alpha) gives.
    """
    alpha = _check_wkb_alpha(alpha)
    n = np.arange(int(nmax) + 1)
    e = (n + 0.5) ** alpha * math.pi ** (alpha / 2) * _wkb_prefactor(alpha) ** alpha
    return SpectrumResult(e, "wkb", {"alpha": alpha})


def wkb_energies_no_exponent(alpha: float, nmax: int) -> SpectrumResult:
    """Variant with the Gamma bracket to the first power, kept for comparison."""
    alpha = _check_wkb_alpha(alpha)
    n = np.arange(int(nmax) + 1)
    e = (n + 0.5) ** alpha * math.pi ** (alpha / 2) * _wkb_prefactor(alpha)
    return SpectrumResult(e, "wkb", {"alpha": alpha, "variant": "no-exponent"})


def fractional_hamiltonian(alpha: float, L: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense H = (A A + diag |xi|^(2 alpha))/2 on N points of [-L, L].

    A is the order-alpha Riesz matrix (symbol -|k|^alpha), so A A has
    symbol +|k|^(2 alpha).  Returns (xi, H).
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    N = int(N)
    if not 3 <= N <= MAX_GRID:
        raise DomainError(f"N must be in 3..{MAX_GRID}, got {N}")
    if not L > 0:
        raise DomainError(f"L must be positive, got {L}")
    xi = np.linspace(-L, L, N)
    A = riesz_matrix(alpha, N, xi[1] - xi[0])
    A = 0.5 * (A + A.T)
    H = 0.5 * (A @ A + np.diag(np.abs(xi) ** (2 * alpha)))
    return xi, H


def fractional_oscillator_numeric(alpha: float, L: float = 8.0, N: int = 401, k: int = 5) -> SpectrumResult:
    """Lowest k eigenvalues of the discretised fractional oscillator.

    Raises
    ------
    GridTooCoarseError
        If the ground state has fewer than 8 grid points above half maximum.
    """
    xi, H = fractional_hamiltonian(alpha, L, N)
    k = int(k)
    if not 1 <= k <= xi.size:
        raise DomainError(f"k must be in 1..{xi.size}, got {k}")
    vals, vecs = eigh(H, subset_by_index=[0, k - 1])
    ground = np.abs(vecs[:, 0])
    if np.count_nonzero(ground >= 0.5 * ground.max()) < MIN_HALF_MAX_POINTS:
        raise GridTooCoarseError("ground state is resolved by fewer than 8 grid points")
    return SpectrumResult(vals, "numeric_grid", {"alpha": alpha, "L": L, "N": N})


def d_oscillator_energies(D: float, nmax: int) -> SpectrumResult:
    """E(n) = ([n]_D + [n+1]_D)/2 = n + D/2."""
    D = check_D(D)
    e = [0.5 * (d_bracket(n, D) + d_bracket(n + 1, D)) for n in range(int(nmax) + 1)]
    return SpectrumResult(e, "exact_ladder", {"D": D})


def d_oscillator_matrix_energies(D: float, N: int) -> SpectrumResult:
    """Eigenvalues of (a a^dagger + a^dagger a)/2 from the truncated ladder, n = 0..N-1.

    The last basis state feels the truncation, so levels are matched to
    basis states by the dominant eigenvector component, not by sorting.
    """
    rep = ladder(D, "D", N)
    vals, vecs = eigh(rep.hamiltonian())
    level = np.empty(rep.dim)
    level[np.argmax(np.abs(vecs), axis=0)] = vals
    return SpectrumResult(level[:-1], "exact_ladder", {"D": D, "N": N})


def uncertainty_bound(D: float, parity: Literal["even", "odd", "mixed"]) -> float:
    D = check_D(D)
    if parity == "even":
        return D / 2
    if parity == "odd":
        return (2.0 - D) / 2
    if parity == "mixed":
        return 0.5
    raise DomainError(f"parity must be even, odd or mixed, got {parity!r}")


# -- free particle ---------------------------------------------------------------

def _scaled_j(nu: float, z: np.ndarray) -> np.ndarray:
    """z^-nu J_nu(z) on arrays (finite at 0)."""
    return kernels.bessel_scaled(nu, rgamma(nu + 1.0), z)


def free_particle_psi(p: float, D: float) -> FunctionHandle:
    """psi_p = A_p |p xi|^(1-D/2) [J_(D/2-1)(|p xi|) + i sgn(p xi) J_(D/2)(|p xi|)].

    A_p = sqrt(|p|^(D-1) / (2 sigma(D))).  Written through z^-nu J_nu so the
    value at xi = 0 is the series leading term rather than a 0 * inf.
    """
    p = float(p)
    if p == 0.0:
        raise DomainError("free_particle_psi needs p != 0")
    D = check_D(D)
    amp = math.sqrt(abs(p) ** (D - 1.0) / (2.0 * sigma(D)))
    nu = D / 2 - 1.0

    def ev(xi):
        xi = np.asarray(xi, dtype=float)
        z = np.abs(p * xi).ravel()
        if z.size and z.max() > BESSEL_MAX_X:
            raise RangeError(f"|p xi| must stay <= {BESSEL_MAX_X}")
        even = _scaled_j(nu, z)
        odd = np.sign(p * xi).ravel() * z * _scaled_j(nu + 1.0, z)
        out = (amp * (even + 1j * odd)).reshape(xi.shape)
        return out[()] if out.ndim == 0 else out

    return FunctionHandle(ev, name=f"psi_p[p={p},D={D}]")


def probability_density(p: float, D: float, grid: Grid) -> Profile:
    """rho_p = (sigma(D)/2) |xi|^(D-1) |psi_p|^2 over the grid."""
    psi = free_particle_psi(p, D)
    xi = grid.abscissae
    with np.errstate(divide="ignore"):
        rho = 0.5 * sigma(D) * np.abs(xi) ** (D - 1.0) * np.abs(psi(xi)) ** 2
    return Profile(grid, rho, {"p": p, "D": D, "method": "density"})


# -- Dunkl Hamiltonian -----------------------------------------------------------

def dunkl_apply(f, D: float, include_potential: bool = True) -> FunctionHandle:
    """H f = -(1/2)[f'' + ((D-1)/xi) f' - ((D-1)/(2 xi^2))(1-R) f] (+ xi^2 f/2).

    The bracket is d_D applied twice.  PolyGauss inputs take that exact
    route; anything else uses 4th-order finite differences and literal
    reflection.
    """
    D = check_D(D)
    if isinstance(f, PolyGauss):
        bare = PolyGauss(f.coeffs)
        hp = -bare.d_derivative().d_derivative()
        if include_potential:
            hp = hp + bare.multiply_by_xi().multiply_by_xi()
        return hp.rescaled(0.5 * f.scale).to_handle(D)
    f = as_handle(f)
    c = D - 1.0

    def ev(xi):
        xi = np.asarray(xi, dtype=float)
        if np.any(xi == 0.0):
            raise DomainError("the Dunkl Hamiltonian is undefined at xi = 0")
        fx = f(xi)
        out = -0.5 * (d2(f, xi) + c * d1(f, xi) / xi - 0.5 * c * (fx - f(-xi)) / (xi * xi))
        if include_potential:
            out = out + 0.5 * xi * xi * fx
        return out[()] if np.ndim(out) == 0 else out

    return FunctionHandle(ev, f.domain, name=f"H[{f.name}]")
