"""Deformed and fractional calculi, oscillator spectra and quantum potentials.

Submodules: ``qcalc`` (q/Q calculus), ``fractional`` (Caputo, Riesz,
Feller, Mittag-Leffler), ``dcalc`` (Dunkl calculus and ladders),
``spectral`` (oscillator energies, free particle), ``qpotential``
(quantum-potential extractors), ``verify`` (identity suite) and ``cli``.
"""

from . import dcalc, fractional, qcalc, qpotential, spectral
from ._backend import backend_name
from .core import FunctionHandle, Grid, PolyGauss, Profile, parse_expression
from .errors import DeformaError, DomainError

__version__ = "0.1.0"

__all__ = [
    "DeformaError",
    "DomainError",
    "FunctionHandle",
    "Grid",
    "PolyGauss",
    "Profile",
    "backend_name",
    "dcalc",
    "fractional",
    "parse_expression",
    "qcalc",
    "qpotential",
    "spectral",
]
