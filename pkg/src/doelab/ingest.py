"""Experiment-results ingestion: read, join with recipes, filter resets.

Results arrive as JSON (a list of per-run objects) or CSV (one row
per run; factor columns prefixed "f.", metric columns "m."). The
recipes stay authoritative for factor values: results files may
omit factors entirely, and reported values that disagree with the
recipe are warned about but never used.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import IoError, MalformedResults, MissingRuns, UnknownMetric
from .recipes import RecipeSet

FACTOR_PREFIX = "f."
METRIC_PREFIX = "m."

_FACTOR_CONFLICT_RTOL = 1e-9


class DataWarning(UserWarning):
    """Recoverable oddity in an input data file."""


@dataclass
class ResultRow:
    run_id: str
    factors: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)


@dataclass
class RunRow:
    run_id: str
    sample_index: int
    replicate: int
    factors: np.ndarray
    metrics: np.ndarray


@dataclass
class RunResults:
    """Analyzer-ready table: one row per non-reset run.

    Rows are ordered by (sample_index, replicate); every factor and
    metric vector is complete. doe_type/design_meta are carried over
    from the recipe set so analyzers can reconstruct the design's
    block structure.
    """

    factor_names: list
    metric_names: list
    rows: list
    doe_type: str = ""
    design_meta: dict = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def factor_matrix(self) -> np.ndarray:
        return np.array([r.factors for r in self.rows], dtype=float).reshape(len(self.rows), -1)

    def metric_matrix(self) -> np.ndarray:
        return np.array([r.metrics for r in self.rows], dtype=float).reshape(len(self.rows), -1)

    def factor_values(self, name: str) -> np.ndarray:
        return self.factor_matrix()[:, self.factor_names.index(name)]

    def metric_values(self, name: str) -> np.ndarray:
        return self.metric_matrix()[:, self.metric_names.index(name)]


def read_results(path, fmt: str | None = None, expected_metrics=None) -> list:
    """Load raw result rows from a JSON or CSV file.

    Format defaults to the file extension. ``expected_metrics``
    enables the completeness checks against declared target metrics.
    """
    fmt = fmt or _infer_format(str(path))
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise IoError(f"cannot read results file {path}: {exc}") from None
    return parse_results_text(text, fmt, expected_metrics)


def parse_results_text(text: str, fmt: str, expected_metrics=None) -> list:
    if fmt == "json":
        rows = _parse_json(text)
    elif fmt == "csv":
        rows = _parse_csv(text)
    else:
        raise MalformedResults("?", f"unsupported results format {fmt!r} (json or csv)")
    if expected_metrics:
        for name in expected_metrics:
            if not any(name in r.metrics for r in rows):
                raise UnknownMetric(
                    f"declared target metric {name!r} is absent from every results row"
                )
        for r in rows:
            missing = [m for m in expected_metrics if m not in r.metrics]
            # Rows with no metrics at all are reset markers; the join drops them.
            if missing and r.metrics:
                raise MalformedResults(r.run_id, f"missing declared metric(s) {missing}")
    return rows


def _parse_json(text: str) -> list:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedResults("?", f"not valid JSON: {exc}") from None
    if not isinstance(doc, list):
        raise MalformedResults("?", "results JSON must be an array of row objects")
    rows = []
    for i, raw in enumerate(doc):
        if not isinstance(raw, dict) or "run_id" not in raw:
            raise MalformedResults(i, "each row needs at least a run_id")
        factors = raw.get("factors", {})
        metrics = raw.get("metrics", {})
        if not isinstance(factors, dict) or not isinstance(metrics, dict):
            raise MalformedResults(raw.get("run_id", i), "factors/metrics must be objects")
        rows.append(ResultRow(
            run_id=str(raw["run_id"]),
            factors={k: _number(v, raw["run_id"], f"factor {k}") for k, v in factors.items()},
            metrics={k: _number(v, raw["run_id"], f"metric {k}", allow_none=True)
                     for k, v in metrics.items()},
        ))
    return rows


def _parse_csv(text: str) -> list:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedResults("?", "results CSV is empty") from None
    header = [h.strip() for h in header]
    if not header or header[0] != "run_id":
        raise MalformedResults("?", "results CSV must start with a run_id column")
    factor_cols, metric_cols = {}, {}
    for idx, name in enumerate(header[1:], start=1):
        if name.startswith(FACTOR_PREFIX):
            factor_cols[idx] = name[len(FACTOR_PREFIX):]
        elif name.startswith(METRIC_PREFIX):
            metric_cols[idx] = name[len(METRIC_PREFIX):]
        else:
            raise MalformedResults(
                "?", f"unknown results column {name!r}; use '{FACTOR_PREFIX}<factor>' "
                f"or '{METRIC_PREFIX}<metric>'"
            )
    rows = []
    for line_no, record in enumerate(reader, start=2):
        if not record or all(not cell.strip() for cell in record):
            continue
        if len(record) != len(header):
            raise MalformedResults(f"line {line_no}", "column count differs from header")
        run_id = record[0].strip()
        factors, metrics = {}, {}
        for idx, name in factor_cols.items():
            cell = record[idx].strip()
            if cell:
                factors[name] = _number(cell, run_id, f"factor {name}")
        for idx, name in metric_cols.items():
            cell = record[idx].strip()
            if cell:
                metrics[name] = _number(cell, run_id, f"metric {name}")
        rows.append(ResultRow(run_id=run_id, factors=factors, metrics=metrics))
    return rows


def join_and_filter(raw_rows, rs: RecipeSet) -> RunResults:
    """Join results with recipes, drop reset runs, order for analysis.

    Output order is (sample_index, replicate), independent of the
    raw-row order. Factor values come from the recipes; results that
    report conflicting values trigger a warning.
    """
    by_id: dict = {}
    for row in raw_rows:
        if row.run_id in by_id:
            raise MalformedResults(row.run_id, "duplicate run_id in results")
        by_id[row.run_id] = row

    known_ids = {r.run_id for r in rs.recipes}
    unknown = [rid for rid in by_id if rid not in known_ids]
    if unknown:
        warnings.warn(
            f"dropping {len(unknown)} results row(s) with run_ids not in the "
            f"recipe set (first: {unknown[0]!r})",
            DataWarning, stacklevel=2,
        )

    keep = sorted(rs.non_reset, key=lambda r: (r.sample_index, r.replicate))
    missing = [r.run_id for r in keep if r.run_id not in by_id]
    if missing:
        raise MissingRuns(missing)

    metric_names = list(rs.target_metrics)
    extra = []
    for recipe in keep:
        for name in by_id[recipe.run_id].metrics:
            if name not in metric_names and name not in extra:
                extra.append(name)
    for name in list(extra):
        if not all(name in by_id[r.run_id].metrics for r in keep):
            warnings.warn(
                f"extra metric {name!r} is not present in every row; dropping it",
                DataWarning, stacklevel=2,
            )
            extra.remove(name)
    metric_names += extra

    out_rows = []
    for recipe in keep:
        raw = by_id[recipe.run_id]
        factors = np.empty(len(rs.factor_names))
        for j, name in enumerate(rs.factor_names):
            try:
                value = float(recipe.factor_value(name))
            except (KeyError, TypeError, ValueError):
                raise MalformedResults(
                    recipe.run_id, f"recipe has no numeric value for factor {name!r}"
                ) from None
            factors[j] = value
            reported = raw.factors.get(name)
            if reported is not None and not np.isclose(
                reported, value, rtol=_FACTOR_CONFLICT_RTOL, atol=0.0
            ):
                warnings.warn(
                    f"run {recipe.run_id}: results report {name}={reported!r} but the "
                    f"recipe says {value!r}; using the recipe value",
                    DataWarning, stacklevel=2,
                )
        metrics = np.empty(len(metric_names))
        for j, name in enumerate(metric_names):
            value = raw.metrics.get(name)
            if value is None:
                raise MalformedResults(recipe.run_id, f"metric {name!r} has no value")
            metrics[j] = value
        out_rows.append(RunRow(
            run_id=recipe.run_id,
            sample_index=recipe.sample_index,
            replicate=recipe.replicate,
            factors=factors,
            metrics=metrics,
        ))

    return RunResults(
        factor_names=list(rs.factor_names),
        metric_names=metric_names,
        rows=out_rows,
        doe_type=rs.doe_type,
        design_meta=rs.design_meta,
    )


def _infer_format(path: str) -> str:
    lower = path.lower()
    if lower.endswith(".json"):
        return "json"
    if lower.endswith(".csv"):
        return "csv"
    raise MalformedResults("?", f"cannot infer results format from {path!r}; pass json or csv")


def _number(value, run_id, what: str, allow_none: bool = False):
    if value is None and allow_none:
        return None
    if isinstance(value, bool):
        raise MalformedResults(run_id, f"{what} must be numeric, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
    raise MalformedResults(run_id, f"{what} must be numeric, got {value!r}")
