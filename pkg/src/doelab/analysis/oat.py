"""Effects of one-at-a-time perturbations around the common baseline."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotAnOatDesign
from ..ingest import RunResults
from .common import average_replicates

OAT_CAVEAT = (
    "one-at-a-time screening changes a single factor from the baseline; "
    "it cannot detect interactions, so treat these rankings as a first pass only"
)


@dataclass(frozen=True)
class OatEffect:
    factor: str
    target_metric: str
    effect_low: float  # metric(min) - metric(baseline)
    effect_high: float  # metric(max) - metric(baseline)
    span: float  # |metric(max) - metric(min)|


def oat_effects(rr: RunResults) -> list:
    """Per factor and metric: low/high effects vs the baseline run.

    Rows 2i+1 and 2i+2 of the design move factor i to its domain
    minimum and maximum; row 0 is the baseline. Output is grouped by
    metric with factors ordered by descending span.
    """
    if rr.doe_type != "OAT":
        raise NotAnOatDesign(f"results stem from a {rr.doe_type!r} design, not OAT")
    k = len(rr.factor_names)
    order, _, metrics = average_replicates(rr)
    expected = list(range(2 * k + 1))
    if list(order) != expected:
        raise NotAnOatDesign(
            f"expected design rows 0..{2 * k} (baseline plus min/max per factor), "
            f"got {order.size} distinct rows"
        )
    out = []
    for m_idx, metric in enumerate(rr.metric_names):
        y = metrics[:, m_idx]
        per_metric = []
        for i, factor in enumerate(rr.factor_names):
            low, high = y[2 * i + 1], y[2 * i + 2]
            per_metric.append(OatEffect(
                factor=factor,
                target_metric=metric,
                effect_low=float(low - y[0]),
                effect_high=float(high - y[0]),
                span=float(abs(high - low)),
            ))
        per_metric.sort(key=lambda e: -e.span)
        out.extend(per_metric)
    return out
