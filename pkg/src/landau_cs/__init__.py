"""Hermite/Laguerre special functions, planar Landau levels and their coherent states."""

from .coherent import (
    GenFunParams,
    GroupElement,
    HermiteIntegralArgs,
    canonical_cs_closed,
    canonical_cs_series,
    genfun_lhs,
    genfun_rhs,
    heisenberg_mul,
    hermite_gaussian,
    hermite_product_integral_closed,
    hermite_product_integral_quad,
    iwata_state,
    perelomov_state,
    schrodinger_action,
)
from .landau import LandauParams, PlaneLabel, basis_fn, kernel_closed, kernel_series, landau_energy
from .quadrature import QuadratureRule, gauss_hermite_rule, polar_rule
from .series import NonConvergence, SeriesResult, TruncationPolicy
from .specfun import ScaledValue, hermite_eval, hermite_sequence, laguerre_eval, log_factorial_ratio

__version__ = "0.1.0"
