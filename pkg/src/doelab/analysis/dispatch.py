"""Design-type to analysis-method dispatch and table assembly.

Every DoE type has one configured analysis method (random
distribution/discrete sampling intentionally has none); the
analyzer can be overridden for exploration.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .. import reporting
from ..errors import AnalyzerNotImplemented, UsageError
from ..ingest import RunResults
from .anova import DEFAULT_ALPHA, anova_screen, manova
from .common import average_replicates
from .efast import efast_indices
from .metamodel import fit_metamodel, predict_metamodel
from .oat import OAT_CAVEAT, oat_effects
from .sobol_indices import DEFAULT_BOOTSTRAP, sobol_indices

ANALYZER_FOR_DOE = {
    "extreme_points": "anova",
    "sobol": "metamodel",
    "LHS": "metamodel",
    "OAT": "oat",
    "sobol_indices": "sobol_indices",
    "fast": "efast",
    "distribution_and_discrete": None,
}

ANALYZERS = ("anova", "metamodel", "oat", "sobol_indices", "efast")


@dataclass
class AnalysisOutput:
    analyzer: str
    tables: dict = field(default_factory=dict)  # file name -> CSV text
    summary: dict = field(default_factory=dict)
    charts: dict = field(default_factory=dict)  # file name -> SVG text


def analyzer_for(doe_type: str) -> str:
    if doe_type not in ANALYZER_FOR_DOE:
        raise UsageError(f"unknown DoE type {doe_type!r}")
    analyzer = ANALYZER_FOR_DOE[doe_type]
    if analyzer is None:
        raise AnalyzerNotImplemented(
            f"no analyzer implemented for doe_type {doe_type!r}; "
            "this design type provides sampling only"
        )
    return analyzer


def run_analysis(rr: RunResults, alpha: float = DEFAULT_ALPHA,
                 n_boot: int = DEFAULT_BOOTSTRAP, seed: int = 0,
                 force_analyzer: str | None = None,
                 make_charts: bool = False) -> AnalysisOutput:
    """Dispatch on the recorded design type and assemble the tables."""
    if force_analyzer is not None:
        if force_analyzer not in ANALYZERS:
            raise UsageError(
                f"unknown analyzer {force_analyzer!r}; expected one of {list(ANALYZERS)}"
            )
        analyzer = force_analyzer
    else:
        analyzer = analyzer_for(rr.doe_type)

    out = AnalysisOutput(analyzer=analyzer)
    out.summary = {
        "analyzer": analyzer,
        "doe_type": rr.doe_type,
        "n_rows": rr.n_rows,
        "factor_names": list(rr.factor_names),
        "metric_names": list(rr.metric_names),
    }

    if analyzer == "anova":
        _run_anova(rr, alpha, out)
    elif analyzer == "metamodel":
        _run_metamodel(rr, out)
    elif analyzer == "oat":
        _run_oat(rr, out)
    elif analyzer == "sobol_indices":
        _run_sobol(rr, n_boot, seed, out, make_charts)
    elif analyzer == "efast":
        _run_efast(rr, out, make_charts)
    return out


def _run_anova(rr: RunResults, alpha: float, out: AnalysisOutput) -> None:
    rows = anova_screen(rr, alpha)
    out.tables["anova.csv"] = reporting.anova_table(rows)
    out.summary["alpha"] = alpha
    out.summary["anova"] = [asdict(r) for r in rows]
    if len(rr.metric_names) >= 2:
        manova_rows = [manova(rr, factor, alpha) for factor in rr.factor_names]
        out.tables["manova.csv"] = reporting.manova_table(manova_rows)
        out.summary["manova"] = [asdict(r) for r in manova_rows]


def _run_metamodel(rr: RunResults, out: AnalysisOutput) -> None:
    _, factors, metrics = average_replicates(rr)
    fits = []
    for m_idx, metric in enumerate(rr.metric_names):
        model = fit_metamodel(factors, metrics[:, m_idx])
        pred, _ = predict_metamodel(model, factors)
        rmse = float(np.sqrt(np.mean((pred - metrics[:, m_idx]) ** 2)))
        fits.append({
            "target_metric": metric,
            "length_scale": float(model.length_scales[0]),
            "signal_variance": model.signal_variance,
            "nugget": model.nugget,
            "log_marginal_likelihood": model.log_marginal_likelihood,
            "train_rmse": rmse,
        })
    out.tables["metamodel.csv"] = reporting.metamodel_table(fits)
    out.summary["metamodel"] = fits
    out.summary["note"] = (
        "use the surface command to export prediction grids over factor pairs"
    )


def _run_oat(rr: RunResults, out: AnalysisOutput) -> None:
    effects = oat_effects(rr)
    out.tables["oat_effects.csv"] = reporting.oat_table(effects)
    out.summary["caveat"] = OAT_CAVEAT
    out.summary["oat_effects"] = [asdict(e) for e in effects]


def _run_sobol(rr: RunResults, n_boot: int, seed: int, out: AnalysisOutput,
               make_charts: bool) -> None:
    results = sobol_indices(rr, n_boot=n_boot, seed=seed)
    out.tables["sobol_indices.csv"] = reporting.sobol_table(results)
    out.summary["n_boot"] = n_boot
    out.summary["seed"] = seed
    out.summary["sobol_indices"] = [asdict(r) for r in results]
    if make_charts:
        _index_charts(rr, results, "sobol_indices", out)


def _run_efast(rr: RunResults, out: AnalysisOutput, make_charts: bool) -> None:
    results = efast_indices(rr)
    out.tables["efast_indices.csv"] = reporting.efast_table(results)
    out.summary["efast_indices"] = [asdict(r) for r in results]
    if make_charts:
        _index_charts(rr, results, "efast_indices", out)


def _index_charts(rr: RunResults, results, stem: str, out: AnalysisOutput) -> None:
    for metric in rr.metric_names:
        rows = [r for r in results if r.target_metric == metric]
        svg = reporting.index_bar_chart(
            f"{stem.replace('_', ' ')}: {metric}",
            [r.factor for r in rows],
            [r.s1 for r in rows],
            [r.st for r in rows],
        )
        out.charts[f"{stem}_{_safe(metric)}.svg"] = svg


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_" else "_" for c in name)
