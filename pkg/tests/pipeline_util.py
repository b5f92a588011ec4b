"""Shared campaign builders used across the test modules."""

from __future__ import annotations

import json
import math

import numpy as np

from doelab.config import parse_scenario_config
from doelab.ingest import ResultRow, RunResults, RunRow, join_and_filter
from doelab.recipes import generate_recipes
from doelab.toymodels import run_experiment

PI = math.pi


def make_run_results(factors, metrics, factor_names=None, metric_names=None,
                     doe_type="extreme_points", design_meta=None,
                     sample_indices=None, replicates=None) -> RunResults:
    """Assemble a RunResults table directly from arrays (test fixtures)."""
    factors = np.asarray(factors, dtype=float).reshape(len(factors), -1)
    metrics = np.asarray(metrics, dtype=float).reshape(len(metrics), -1)
    factor_names = list(factor_names or [f"e.f{i}" for i in range(factors.shape[1])])
    metric_names = list(metric_names or [f"m{i}" for i in range(metrics.shape[1])])
    n = factors.shape[0]
    sample_indices = list(sample_indices if sample_indices is not None else range(n))
    replicates = list(replicates if replicates is not None else [0] * n)
    rows = [
        RunRow(f"r{i:05d}", sample_indices[i], replicates[i], factors[i], metrics[i])
        for i in range(n)
    ]
    return RunResults(factor_names, metric_names, rows,
                      doe_type=doe_type, design_meta=design_meta or {})


def config_doc(doe_type: str, samples: int, variations: dict, *, seed: int = 0,
               metrics=("y",), entities=None, scenario_name: str = "test_1",
               replication: int | None = None, blocking: dict | None = None) -> str:
    doc = {
        "samples": samples,
        "doe_type": doe_type,
        "basic_conf": {"scenario_name": scenario_name},
        "entities_parameters": entities or {},
        "variations_dict": variations,
        "target_metrics": list(metrics),
        "seed": seed,
    }
    if replication is not None:
        doc["replication"] = {"n_pp": replication}
    if blocking is not None:
        doc["blocking"] = blocking
    return json.dumps(doc)


def unit_cube_variations(k: int, entity: str = "model", lo: float = 0.0,
                         hi: float = 1.0) -> dict:
    return {entity: {f"x{i + 1}": [lo, hi] for i in range(k)}}


def ishigami_doc(doe_type: str, samples: int, seed: int = 0) -> str:
    return config_doc(doe_type, samples, unit_cube_variations(3, lo=-PI, hi=PI), seed=seed)


def rows_to_raw(rows) -> list:
    return [ResultRow(r["run_id"], dict(r["factors"]), dict(r["metrics"])) for r in rows]


def run_pipeline(cfg_text: str, model: str = "ishigami", options=None):
    """config text -> (RunResults, RecipeSet) through the in-process stages."""
    cfg = parse_scenario_config(cfg_text)
    rs = generate_recipes(cfg)
    rows = run_experiment(rs, model, model_options=options)
    return join_and_filter(rows_to_raw(rows), rs), rs
