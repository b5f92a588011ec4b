"""Shared helpers for the analyzers."""

from __future__ import annotations

import numpy as np

from ..ingest import RunResults


def average_replicates(rr: RunResults):
    """Per-design-row averages: (sample_indices, factors, metrics).

    Replicated runs target nuisance variance; averaging them per
    sample index is the unbiased reduction the index estimators
    expect. Factors are identical across replicates of a sample, so
    the first occurrence is kept.
    """
    sample_idx = np.array([r.sample_index for r in rr.rows])
    order = np.unique(sample_idx)
    factor_mat = rr.factor_matrix()
    metric_mat = rr.metric_matrix()
    factors = np.empty((order.size, factor_mat.shape[1]))
    metrics = np.empty((order.size, metric_mat.shape[1]))
    for pos, s in enumerate(order):
        mask = sample_idx == s
        factors[pos] = factor_mat[mask][0]
        metrics[pos] = metric_mat[mask].mean(axis=0)
    return order, factors, metrics
