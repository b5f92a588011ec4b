"""Gaussian-process surrogate for response-surface exploration.

Squared-exponential kernel with one shared length scale, fitted by
log-marginal-likelihood grid search over a small fixed grid. That
keeps the fit deterministic and dependency-free; the surfaces it
feeds are for visual exploration, not prediction-grade accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..domains import Interval
from ..errors import DimensionMismatch, DoelabError, NonIntervalFactor
from ..statlib.linalg import cholesky_factor, solve_lower, solve_upper

LENGTH_SCALE_GRID = (0.1, 0.2, 0.5, 1.0, 2.0, 5.0)
SIGNAL_VARIANCE_GRID = (0.5, 1.0, 2.0)
DEFAULT_NUGGET = 1e-8


@dataclass
class GpModel:
    train_inputs: np.ndarray  # standardized, n x k
    train_targets: np.ndarray  # standardized, n
    length_scales: np.ndarray  # k (shared value replicated)
    signal_variance: float
    nugget: float
    chol: np.ndarray  # lower Cholesky factor of K + nugget I
    alpha: np.ndarray  # (K + nugget I)^-1 y
    x_mean: np.ndarray
    x_scale: np.ndarray
    y_mean: float
    y_scale: float
    log_marginal_likelihood: float

    @property
    def n_factors(self) -> int:
        return self.train_inputs.shape[1]

    @property
    def prior_std(self) -> float:
        """Predictive standard deviation far away from all data."""
        return float(np.sqrt(self.signal_variance) * self.y_scale)


def _sq_dists(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    return np.sum(diff * diff, axis=-1)


def fit_metamodel(inputs, targets,
                  length_scale_grid=LENGTH_SCALE_GRID,
                  signal_variance_grid=SIGNAL_VARIANCE_GRID,
                  nugget: float = DEFAULT_NUGGET) -> GpModel:
    """Fit the surrogate on (inputs, targets), standardized internally.

    Hyperparameters maximize the log marginal likelihood over the
    grid; ties break toward the first grid point in enumeration
    order, so the fit is fully deterministic.
    """
    x = np.asarray(inputs, dtype=float)
    y = np.asarray(targets, dtype=float).ravel()
    if x.ndim != 2:
        raise DimensionMismatch("inputs must be a 2-d array (runs x factors)")
    n = x.shape[0]
    if n < 2 or y.size != n:
        raise DoelabError(f"surrogate fitting needs >= 2 aligned samples, got {n}")

    x_mean = x.mean(axis=0)
    x_scale = x.std(axis=0)
    x_scale[x_scale == 0.0] = 1.0
    y_mean = float(y.mean())
    y_scale = float(y.std())
    if y_scale == 0.0:
        y_scale = 1.0
    xs = (x - x_mean) / x_scale
    ys = (y - y_mean) / y_scale

    d2 = _sq_dists(xs, xs)
    best = None
    for ell in length_scale_grid:
        corr = np.exp(-0.5 * d2 / (ell * ell))
        for sigma2 in signal_variance_grid:
            kernel = sigma2 * corr + nugget * np.eye(n)
            l_mat, _ = cholesky_factor(kernel)
            alpha = solve_upper(l_mat.T, solve_lower(l_mat, ys))
            lml = float(
                -0.5 * (ys @ alpha)
                - np.sum(np.log(np.diag(l_mat)))
                - 0.5 * n * np.log(2.0 * np.pi)
            )
            if best is None or lml > best[0]:
                best = (lml, ell, sigma2, l_mat, alpha)

    lml, ell, sigma2, l_mat, alpha = best
    k = x.shape[1]
    return GpModel(
        train_inputs=xs,
        train_targets=ys,
        length_scales=np.full(k, ell),
        signal_variance=sigma2,
        nugget=nugget,
        chol=l_mat,
        alpha=alpha,
        x_mean=x_mean,
        x_scale=x_scale,
        y_mean=y_mean,
        y_scale=y_scale,
        log_marginal_likelihood=lml,
    )


def predict_metamodel(model: GpModel, query) -> tuple[np.ndarray, np.ndarray]:
    """Posterior mean and standard deviation at the query points."""
    q = np.asarray(query, dtype=float)
    if q.ndim == 1:
        q = q[None, :]
    if q.ndim != 2 or q.shape[1] != model.n_factors:
        raise DimensionMismatch(
            f"query has {q.shape[1] if q.ndim == 2 else '?'} columns; "
            f"model was trained on {model.n_factors} factors"
        )
    qs = (q - model.x_mean) / model.x_scale
    ell = model.length_scales[0]
    k_star = model.signal_variance * np.exp(
        -0.5 * _sq_dists(qs, model.train_inputs) / (ell * ell)
    )
    mean_s = k_star @ model.alpha
    v = solve_lower(model.chol, k_star.T)
    var_s = model.signal_variance - np.sum(v * v, axis=0)
    var_s = np.maximum(var_s, 0.0)
    mean = mean_s * model.y_scale + model.y_mean
    std = np.sqrt(var_s) * model.y_scale
    return mean, std


def surface_grid(model: GpModel, factors: list, factor_x: str, factor_y: str,
                 resolution: int, fixed: dict | None = None) -> list:
    """Prediction grid over two interval factors, others pinned.

    Returns resolution^2 records (x value, y value, mean, std) with
    the x factor as the outer loop. Pinned factors default to their
    domain centers.
    """
    if resolution < 2:
        raise DoelabError("surface resolution must be at least 2")
    if factor_x == factor_y:
        raise DoelabError("the two surface factors must differ")
    by_name = {f.name: f for f in factors}
    for name in (factor_x, factor_y):
        if name not in by_name:
            raise DoelabError(f"unknown factor {name!r}")
        if not isinstance(by_name[name].domain, Interval):
            raise NonIntervalFactor(
                f"surface grids need interval domains; factor {name!r} has "
                f"{type(by_name[name].domain).__name__}"
            )
    names = [f.name for f in factors]
    if len(names) != model.n_factors:
        raise DimensionMismatch(
            f"{len(names)} factors supplied for a model trained on {model.n_factors}"
        )
    fixed = fixed or {}
    pinned = np.empty(len(names))
    for j, f in enumerate(factors):
        if f.name in fixed:
            pinned[j] = float(fixed[f.name])
        else:
            pinned[j] = float(f.domain.center())

    ix, iy = names.index(factor_x), names.index(factor_y)
    dom_x: Interval = by_name[factor_x].domain
    dom_y: Interval = by_name[factor_y].domain
    grid_x = np.linspace(dom_x.lo, dom_x.hi, resolution)
    grid_y = np.linspace(dom_y.lo, dom_y.hi, resolution)

    queries = np.tile(pinned, (resolution * resolution, 1))
    pos = 0
    for vx in grid_x:
        for vy in grid_y:
            queries[pos, ix] = vx
            queries[pos, iy] = vy
            pos += 1
    mean, std = predict_metamodel(model, queries)
    return [
        (float(queries[i, ix]), float(queries[i, iy]), float(mean[i]), float(std[i]))
        for i in range(queries.shape[0])
    ]
