"""Design-matrix generation in the unit hypercube plus domain scaling."""

from .designs import (
    DesignMatrix,
    build_design,
    efast_design,
    efast_frequencies,
    efast_meta,
    efast_minimum_samples,
    extreme_points,
    lhs_points,
    oat_design,
    random_design,
    saltelli_design,
    saltelli_meta,
    scale_to_domain,
)
from .sobol import SobolSequenceState, sobol_points

__all__ = [
    "DesignMatrix",
    "SobolSequenceState",
    "build_design",
    "efast_design",
    "efast_frequencies",
    "efast_meta",
    "efast_minimum_samples",
    "extreme_points",
    "lhs_points",
    "oat_design",
    "random_design",
    "saltelli_design",
    "saltelli_meta",
    "scale_to_domain",
    "sobol_points",
]
