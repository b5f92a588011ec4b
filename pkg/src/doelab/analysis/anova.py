"""Variance screening: one-way ANOVA per factor/metric plus MANOVA.

Grouped screening fits designs where each factor takes a small set
of levels (corner designs); the factor under test defines the
groups while all other factors vary freely across them. Metrics
are tested one at a time; with several metrics the multivariate
test guards against patterns the per-metric runs would miss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateGroups, SingularCovariance, TooManyLevels
from ..ingest import RunResults
from ..statlib.special import f_cdf

MAX_LEVELS = 8
DEFAULT_ALPHA = 0.05


@dataclass(frozen=True)
class AnovaRow:
    factor: str
    target_metric: str
    f_stat: float
    p_value: float
    significant: bool
    d1: int
    d2: int


@dataclass(frozen=True)
class ManovaRow:
    factor: str
    wilks_lambda: float
    f_approx: float
    d1: float
    d2: float
    p_value: float
    significant: bool


def anova_one_way(groups, alpha: float = DEFAULT_ALPHA) -> dict:
    """F-test for equal group means.

    F = (SSB / (g-1)) / (SSW / (n-g)); the p-value is the upper tail
    of the F(g-1, n-g) distribution.
    """
    groups = [np.asarray(g, dtype=float) for g in groups]
    if len(groups) < 2:
        raise DegenerateGroups("need at least 2 groups")
    if any(g.size < 2 for g in groups):
        raise DegenerateGroups("every group needs at least 2 observations")
    n = sum(g.size for g in groups)
    g_count = len(groups)
    grand = sum(g.sum() for g in groups) / n
    ssb = sum(g.size * (g.mean() - grand) ** 2 for g in groups)
    ssw = sum(((g - g.mean()) ** 2).sum() for g in groups)
    if ssw <= 0.0:
        raise DegenerateGroups("zero within-group variance; F is undefined")
    d1, d2 = g_count - 1, n - g_count
    f_stat = float((ssb / d1) / (ssw / d2))
    p_value = 1.0 - f_cdf(f_stat, d1, d2)
    return {"F": f_stat, "p": p_value, "d1": d1, "d2": d2,
            "significant": bool(p_value < alpha)}


def factor_levels(values: np.ndarray, factor: str, max_levels: int = MAX_LEVELS) -> np.ndarray:
    levels = np.unique(values)
    if levels.size > max_levels:
        raise TooManyLevels(factor, int(levels.size), max_levels)
    return levels


def anova_screen(rr: RunResults, alpha: float = DEFAULT_ALPHA) -> list:
    """One AnovaRow per (factor, metric), metrics outermost."""
    rows = []
    factor_mat = rr.factor_matrix()
    metric_mat = rr.metric_matrix()
    for m_idx, metric in enumerate(rr.metric_names):
        y = metric_mat[:, m_idx]
        for f_idx, factor in enumerate(rr.factor_names):
            values = factor_mat[:, f_idx]
            levels = factor_levels(values, factor)
            groups = [y[values == level] for level in levels]
            res = anova_one_way(groups, alpha)
            rows.append(AnovaRow(
                factor=factor,
                target_metric=metric,
                f_stat=res["F"],
                p_value=res["p"],
                significant=res["significant"],
                d1=res["d1"],
                d2=res["d2"],
            ))
    return rows


def manova(rr: RunResults, factor: str, alpha: float = DEFAULT_ALPHA) -> ManovaRow:
    """Wilks' lambda over all metrics for one grouping factor.

    Lambda = det(W) / det(W + B) from the within/between
    cross-product matrices; the p-value uses Rao's F approximation.
    A rank-deficient metric covariance (e.g. duplicated metrics)
    gets one diagonal-jitter retry before raising.
    """
    p = len(rr.metric_names)
    if p < 2:
        raise DegenerateGroups("multivariate test needs at least 2 metrics")
    values = rr.factor_values(factor)
    y = rr.metric_matrix()
    levels = factor_levels(values, factor)
    n = y.shape[0]
    g = levels.size
    if g < 2:
        raise DegenerateGroups(f"factor {factor!r} takes a single level")
    if n - g <= p:
        raise DegenerateGroups(
            f"need more observations than metrics per degree of freedom "
            f"(n={n}, groups={g}, metrics={p})"
        )

    grand = y.mean(axis=0)
    w_mat = np.zeros((p, p))
    b_mat = np.zeros((p, p))
    for level in levels:
        block = y[values == level]
        center = block.mean(axis=0)
        dev = block - center
        w_mat += dev.T @ dev
        d = (center - grand)[:, None]
        b_mat += block.shape[0] * (d @ d.T)

    lam = _wilks(w_mat, b_mat)
    m_h, m_e = g - 1, n - g
    denom = p * p + m_h * m_h - 5
    t = math.sqrt((p * p * m_h * m_h - 4) / denom) if denom > 0 else 1.0
    w = m_e + m_h - (p + m_h + 1) / 2.0
    d1 = p * m_h
    d2 = w * t - (p * m_h - 2) / 2.0
    if d2 <= 0:
        raise DegenerateGroups("too few observations for Rao's approximation")
    lam_root = lam ** (1.0 / t)
    f_approx = float((1.0 - lam_root) / lam_root * (d2 / d1))
    p_value = 1.0 - f_cdf(f_approx, d1, d2)
    return ManovaRow(
        factor=factor,
        wilks_lambda=float(lam),
        f_approx=f_approx,
        d1=float(d1),
        d2=float(d2),
        p_value=p_value,
        significant=bool(p_value < alpha),
    )


def _wilks(w_mat: np.ndarray, b_mat: np.ndarray) -> float:
    total = w_mat + b_mat
    sign_w, logdet_w = np.linalg.slogdet(w_mat)
    sign_t, logdet_t = np.linalg.slogdet(total)
    if sign_w <= 0 or sign_t <= 0:
        scale = np.trace(total) / total.shape[0]
        if scale <= 0 or not np.isfinite(scale):
            raise SingularCovariance("metric cross-products are identically zero")
        jitter = 1e-10 * scale * np.eye(total.shape[0])
        sign_w, logdet_w = np.linalg.slogdet(w_mat + jitter)
        sign_t, logdet_t = np.linalg.slogdet(total + jitter)
        if sign_w <= 0 or sign_t <= 0:
            raise SingularCovariance("metric covariance is singular even with jitter")
    lam = math.exp(logdet_w - logdet_t)
    return min(max(lam, 0.0), 1.0)
