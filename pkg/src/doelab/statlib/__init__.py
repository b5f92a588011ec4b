"""Numerical kernel: special functions, seeded streams, periodogram, SPD solves."""

from .fourier import periodogram, search_grid
from .linalg import cholesky_factor, cholesky_solve, solve_lower, solve_upper
from .rng import Rng
from .special import f_cdf, ln_gamma, normal_ppf, reg_incomplete_beta

__all__ = [
    "Rng",
    "cholesky_factor",
    "cholesky_solve",
    "f_cdf",
    "ln_gamma",
    "normal_ppf",
    "periodogram",
    "reg_incomplete_beta",
    "search_grid",
    "solve_lower",
    "solve_upper",
]
