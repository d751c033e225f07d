"""Special functions, function handles, grids, PolyGauss and the expression grammar."""

from .expr import parse_expression
from .handles import (
    FD_STEP_1,
    FD_STEP_2,
    FunctionHandle,
    Grid,
    Profile,
    as_handle,
    d1,
    d2,
    derivative_handle,
)
from .polygauss import PolyGauss, ladder_state_norm, ladder_state_raw
from .special import bessel_j, bessel_j_scaled, gamma, lgamma, rgamma

__all__ = [
    "FD_STEP_1",
    "FD_STEP_2",
    "FunctionHandle",
    "Grid",
    "PolyGauss",
    "Profile",
    "as_handle",
    "bessel_j",
    "bessel_j_scaled",
    "d1",
    "d2",
    "derivative_handle",
    "gamma",
    "ladder_state_norm",
    "ladder_state_raw",
    "lgamma",
    "parse_expression",
    "rgamma",
]
