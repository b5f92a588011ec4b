"""Service operations behind the HTTP endpoints.

Plain functions over the request/response models so the CLI can
invoke them in-process; the FastAPI layer adds only routing and
error-to-status translation. All handlers are stateless.
"""

from __future__ import annotations

from ..analysis.common import average_replicates
from ..analysis.dispatch import run_analysis
from ..analysis.metamodel import fit_metamodel, surface_grid
from ..config import parse_scenario_config, validate_config
from ..domains import FactorSpec, domain_from_jsonable
from ..errors import DoelabError, UsageError
from ..ingest import RunResults, ResultRow, join_and_filter, parse_results_text
from ..recipes import (
    RecipeSet,
    generate_recipes,
    recipe_set_from_jsonable,
    recipe_set_to_jsonable,
)
from ..reporting import fmt, render_csv, surface_heatmap, surface_table
from ..sampling.designs import build_design
from ..toymodels import run_experiment
from . import models


def sample(req: models.SampleRequest) -> models.SampleResponse:
    """Parse + validate a config, generate recipes, report the design."""
    cfg = parse_scenario_config(req.config_text, strict=req.strict_json,
                                default_seed=req.fallback_seed or 0)
    report = validate_config(cfg)
    rs = generate_recipes(cfg)  # re-raises validation errors with paths
    design_rows = len({r.sample_index for r in rs.non_reset})
    summary = (
        f"{cfg.doe_type} design: {design_rows} sample rows over "
        f"{len(cfg.variations)} factor(s); {len(rs.recipes)} recipes total "
        f"({len(rs.recipes) - len(rs.non_reset)} reset runs), seed {cfg.seed}"
    )
    return models.SampleResponse(
        recipe_set=recipe_set_to_jsonable(rs),
        recipe_count=len(rs.recipes),
        design_rows=design_rows,
        doe_type=cfg.doe_type,
        seed=cfg.seed,
        summary=summary,
        validation_warnings=[f"{w.path}: {w.message}" for w in report.warnings],
    )


def run_demo(req: models.RunDemoRequest) -> models.RunDemoResponse:
    rs = recipe_set_from_jsonable(req.recipe_set)
    rows = run_experiment(rs, req.model, out_path=None, model_options=req.options)
    return models.RunDemoResponse(results=rows, row_count=len(rows))


def analyze(req: models.AnalyzeRequest) -> models.AnalyzeResponse:
    rs = recipe_set_from_jsonable(req.recipe_set)
    rr = _ingest(req, rs)
    seed = rs.seed if req.seed is None else req.seed
    out = run_analysis(
        rr,
        alpha=req.alpha,
        n_boot=req.n_boot,
        seed=seed,
        force_analyzer=req.force_analyzer,
        make_charts=req.charts,
    )
    out.summary["scenario_name"] = rs.scenario_name
    out.summary["seed"] = seed
    return models.AnalyzeResponse(
        analyzer=out.analyzer,
        tables=out.tables,
        summary=out.summary,
        charts=out.charts,
    )


def surface(req: models.SurfaceRequest) -> models.SurfaceResponse:
    if req.factor_x == req.factor_y:
        raise UsageError("surface factors --fx and --fy must differ")
    rs = recipe_set_from_jsonable(req.recipe_set)
    rr = _ingest(req, rs)
    if req.metric not in rr.metric_names:
        raise UsageError(
            f"unknown metric {req.metric!r}; campaign provides {rr.metric_names}"
        )
    factors = _design_factors(rs)
    _, train_x, train_y = average_replicates(rr)
    model = fit_metamodel(train_x, train_y[:, rr.metric_names.index(req.metric)])
    records = surface_grid(model, factors, req.factor_x, req.factor_y,
                           req.resolution, req.fixed)
    csv_text = surface_table(req.factor_x, req.factor_y, records)
    svg = None
    if req.chart:
        svg = surface_heatmap(
            f"{req.metric} over {req.factor_x} x {req.factor_y}",
            req.factor_x, req.factor_y, records, req.resolution,
        )
    return models.SurfaceResponse(csv=csv_text, svg=svg)


def dump_design(req: models.DumpDesignRequest) -> models.DumpDesignResponse:
    """Raw design matrix as CSV (header = factor names), for debugging."""
    cfg = parse_scenario_config(req.config_text, strict=req.strict_json)
    design = build_design(cfg.doe_type, list(cfg.variations), cfg.samples, cfg.seed)
    rows = [
        tuple(fmt(v) for v in design.rows[i])
        for i in range(design.rows.shape[0])
    ]
    return models.DumpDesignResponse(
        csv=render_csv(tuple(design.factor_names), rows),
        design_rows=design.rows.shape[0],
    )


def _ingest(req, rs: RecipeSet) -> RunResults:
    if req.results_rows is not None:
        raw = [
            ResultRow(
                run_id=str(r.get("run_id")),
                factors=dict(r.get("factors", {})),
                metrics=dict(r.get("metrics", {})),
            )
            for r in req.results_rows
        ]
    elif req.results_text is not None:
        if not req.results_format:
            raise UsageError("results_format (json or csv) is required with results_text")
        raw = parse_results_text(req.results_text, req.results_format,
                                 expected_metrics=rs.target_metrics)
    else:
        raise UsageError("either results_rows or results_text must be provided")
    return join_and_filter(raw, rs)


def _design_factors(rs: RecipeSet) -> list:
    raw = (rs.design_meta or {}).get("factors")
    if not raw:
        raise DoelabError(
            "recipe file lacks factor domain metadata (design_meta.factors); "
            "regenerate the recipes with this toolbox version"
        )
    return [FactorSpec(f["name"], domain_from_jsonable(f["domain"])) for f in raw]
