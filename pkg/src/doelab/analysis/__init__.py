"""Analysis methods: ANOVA/MANOVA screening, OAT effects, variance-based
indices, frequency-based indices, and the Gaussian-process surrogate."""

from .anova import AnovaRow, ManovaRow, anova_one_way, anova_screen, manova
from .dispatch import (
    ANALYZER_FOR_DOE,
    ANALYZERS,
    AnalysisOutput,
    analyzer_for,
    run_analysis,
)
from .efast import EfastIndexResult, efast_indices
from .metamodel import (
    GpModel,
    fit_metamodel,
    predict_metamodel,
    surface_grid,
)
from .oat import OAT_CAVEAT, OatEffect, oat_effects
from .sobol_indices import SobolIndexResult, sobol_indices

__all__ = [
    "ANALYZERS",
    "ANALYZER_FOR_DOE",
    "AnalysisOutput",
    "AnovaRow",
    "EfastIndexResult",
    "GpModel",
    "ManovaRow",
    "OAT_CAVEAT",
    "OatEffect",
    "SobolIndexResult",
    "analyzer_for",
    "anova_one_way",
    "anova_screen",
    "efast_indices",
    "fit_metamodel",
    "manova",
    "oat_effects",
    "predict_metamodel",
    "run_analysis",
    "sobol_indices",
    "surface_grid",
]
