"""Kernel backend selection.

Numba is used when importable unless ``DEFORMA_NUMBA`` is set to one of
``0/false/no/off``; the numpy implementations are then used instead.
"""

from __future__ import annotations

import os

_OFF = {"0", "false", "no", "off"}

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

NUMBA_AVAILABLE = _numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("DEFORMA_NUMBA", "1").strip().lower() not in _OFF


def njit(fn):
    """Compile ``fn`` in nopython mode when numba is available.

    The python function is returned untouched otherwise, so the loop
    versions stay callable (slowly) on numba-less installs.
    """
    if not NUMBA_AVAILABLE:
        return fn
    return _numba.njit(cache=True)(fn)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
