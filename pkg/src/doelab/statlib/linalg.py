"""Dense SPD solves for the surrogate model."""

from __future__ import annotations

import numpy as np

from ..errors import NotPositiveDefinite


def cholesky_factor(a) -> tuple[np.ndarray, float]:
    """Lower Cholesky factor of a, retrying once with diagonal jitter.

    Returns (L, jitter_used). Raises NotPositiveDefinite if the
    jittered matrix still fails to factor.
    """
    a = np.asarray(a, dtype=float)
    try:
        return np.linalg.cholesky(a), 0.0
    except np.linalg.LinAlgError:
        pass
    jitter = 1e-8 * np.trace(a) / a.shape[0]
    if jitter <= 0.0 or not np.isfinite(jitter):
        jitter = 1e-12
    try:
        return np.linalg.cholesky(a + jitter * np.eye(a.shape[0])), jitter
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite(
            f"matrix is not positive definite even with jitter {jitter:g}"
        ) from None


def solve_lower(l_mat: np.ndarray, b) -> np.ndarray:
    """Forward substitution for lower-triangular l_mat."""
    b = np.asarray(b, dtype=float)
    squeeze = b.ndim == 1
    x = np.array(b, dtype=float, ndmin=2).T if squeeze else b.copy()
    n = l_mat.shape[0]
    for i in range(n):
        x[i] = (x[i] - l_mat[i, :i] @ x[:i]) / l_mat[i, i]
    return x[:, 0] if squeeze else x


def solve_upper(u_mat: np.ndarray, b) -> np.ndarray:
    """Back substitution for upper-triangular u_mat."""
    b = np.asarray(b, dtype=float)
    squeeze = b.ndim == 1
    x = np.array(b, dtype=float, ndmin=2).T if squeeze else b.copy()
    n = u_mat.shape[0]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - u_mat[i, i + 1:] @ x[i + 1:]) / u_mat[i, i]
    return x[:, 0] if squeeze else x


def cholesky_solve(a, b) -> np.ndarray:
    """Solve A X = B for symmetric positive-definite A."""
    l_mat, _ = cholesky_factor(a)
    z = solve_lower(l_mat, b)
    return solve_upper(l_mat.T, z)
