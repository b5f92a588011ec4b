"""Design-matrix generators for every supported DoE type.

All generators are pure functions of their arguments (plus seed
where one applies); row order is contractual and analyzers rely on
it to reconstruct block structure from row indices alone.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from ..domains import FactorSpec
from ..errors import SampleSizeTooSmall, TooManyFactors, UsageError
from ..statlib.rng import Rng
from .sobol import sobol_points

MAX_CORNER_FACTORS = 20
EFAST_HARMONICS = 4


@dataclass
class DesignMatrix:
    """Ordered sample points plus the metadata analyzers need.

    ``rows`` live in the unit hypercube when ``unit`` is True;
    the random design for distribution/discrete factors is emitted
    directly in factor units instead.
    """

    design_type: str
    factor_names: list[str]
    rows: np.ndarray
    base_samples: int
    meta: dict = field(default_factory=dict)
    unit: bool = True

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]


def lhs_points(dim: int, n: int, seed: int) -> np.ndarray:
    """Latin hypercube: one point per equal-probability stratum and column."""
    if n < 1:
        raise ValueError("lhs_points requires n >= 1")
    rng = Rng(seed, ("lhs",))
    out = np.empty((n, dim), dtype=float)
    for d in range(dim):
        strata = rng.permutation(n)
        jitter = rng.random(n)
        out[:, d] = (strata + jitter) / n
    return out


def extreme_points(k: int) -> np.ndarray:
    """All 2^k corners of the unit hypercube, binary counting order.

    Factor 0 is the least significant bit: row r has coordinate j
    equal to bit j of r.
    """
    if k < 1:
        raise ValueError("extreme_points requires k >= 1")
    if k > MAX_CORNER_FACTORS:
        raise TooManyFactors(k, MAX_CORNER_FACTORS)
    rows = np.arange(2 ** k)
    return ((rows[:, None] >> np.arange(k)[None, :]) & 1).astype(float)


def oat_design(k: int) -> np.ndarray:
    """One-at-a-time: baseline at 0.5 plus min/max rows per factor.

    Row 0 is the baseline; rows 2i+1 and 2i+2 move factor i to 0
    and 1 respectively.
    """
    if k < 1:
        raise ValueError("oat_design requires k >= 1")
    out = np.full((2 * k + 1, k), 0.5)
    for i in range(k):
        out[2 * i + 1, i] = 0.0
        out[2 * i + 2, i] = 1.0
    return out


def saltelli_design(n_base: int, k: int, second_order: bool = False) -> np.ndarray:
    """A/B/AB_i sample blocks for variance-based index estimation.

    Columns 0..k-1 of a 2k-dimensional Sobol sequence form matrix A
    and columns k..2k-1 form B; AB_i is A with column i replaced
    from B (BA_i the mirror image when second_order is set). Rows
    are grouped per base sample j as A_j, AB_0,j .. AB_{k-1},j
    [, BA_0,j .. BA_{k-1},j], B_j, giving n_base*(k+2) rows, or
    n_base*(2k+2) with the second-order blocks.
    """
    if n_base < 1 or k < 1:
        raise ValueError("saltelli_design requires n_base >= 1 and k >= 1")
    if n_base & (n_base - 1):
        warnings.warn(
            f"saltelli base sample count {n_base} is not a power of two; "
            "low-discrepancy balance is best at powers of two",
            stacklevel=2,
        )
    base = sobol_points(2 * k, 0, n_base)
    a_mat, b_mat = base[:, :k], base[:, k:]
    block = 2 * k + 2 if second_order else k + 2
    out = np.empty((n_base * block, k), dtype=float)
    for j in range(n_base):
        r = j * block
        out[r] = a_mat[j]
        for i in range(k):
            out[r + 1 + i] = a_mat[j]
            out[r + 1 + i, i] = b_mat[j, i]
        if second_order:
            for i in range(k):
                out[r + 1 + k + i] = b_mat[j]
                out[r + 1 + k + i, i] = a_mat[j, i]
        out[r + block - 1] = b_mat[j]
    return out


def saltelli_meta(n_base: int, k: int, second_order: bool = False) -> dict:
    """Block-structure record stored with saltelli designs."""
    return {
        "n_base": n_base,
        "k": k,
        "second_order": second_order,
        "block_rows": 2 * k + 2 if second_order else k + 2,
        "layout": "A, AB_i.., BA_i.. (second order only), B per base sample",
    }


def efast_minimum_samples(harmonics: int = EFAST_HARMONICS) -> int:
    """Smallest usable points-per-curve count for the frequency design.

    The driver frequency floor((n-1)/(2M)) must stay at least 2M so
    that complementary factors get frequencies separated from the
    driver's analyzed harmonics; that needs n >= 4*M^2 + 1.
    """
    return 4 * harmonics * harmonics + 1


def efast_frequencies(n_per_curve: int, k: int, harmonics: int = EFAST_HARMONICS):
    """(omega_max, per-curve frequency assignment) for the design.

    Curve i drives factor i at omega_max. The other factors take
    frequencies from {1 .. max(1, omega_max // (2*harmonics))}:
    spread evenly over that band when it is wide enough for
    distinct values (harmonically clustered complements would bias
    the along-curve variance), cycling through it otherwise.
    """
    omega_max = (n_per_curve - 1) // (2 * harmonics)
    m_comp = max(1, omega_max // (2 * harmonics))
    if m_comp >= k - 1:
        comp = np.floor(np.linspace(1, m_comp, max(k - 1, 1))).astype(int)
    else:
        comp = np.arange(k - 1) % m_comp + 1
    freqs = np.zeros((k, k), dtype=int)
    for curve in range(k):
        freqs[curve, curve] = omega_max
        others = [j for j in range(k) if j != curve]
        for pos, j in enumerate(others):
            freqs[curve, j] = comp[pos]
    return omega_max, freqs


def efast_design(n_per_curve: int, k: int, harmonics: int = EFAST_HARMONICS) -> np.ndarray:
    """Search-curve samples, one curve per driver factor.

    Point t of curve i has coordinate j equal to
    0.5 + arcsin(sin(w_j * s_t)) / pi over the symmetric grid
    s_t = pi*(2t+1-n)/n, with w_j from efast_frequencies. Rows are
    curve-major: k * n_per_curve rows in total.
    """
    if k < 2:
        raise UsageError("the frequency-based design requires at least 2 factors")
    if harmonics < 1:
        raise ValueError("harmonics must be >= 1")
    minimum = efast_minimum_samples(harmonics)
    if n_per_curve % 2 == 0 or n_per_curve < minimum:
        raise SampleSizeTooSmall(
            minimum,
            f"points per curve must be odd and >= {minimum} "
            f"(got {n_per_curve}, harmonics={harmonics})",
        )
    _, freqs = efast_frequencies(n_per_curve, k, harmonics)
    t = np.arange(n_per_curve)
    s = np.pi * (2.0 * t + 1.0 - n_per_curve) / n_per_curve
    out = np.empty((k * n_per_curve, k), dtype=float)
    for curve in range(k):
        angles = freqs[curve][None, :] * s[:, None]
        out[curve * n_per_curve:(curve + 1) * n_per_curve] = (
            0.5 + np.arcsin(np.sin(angles)) / np.pi
        )
    return out


def efast_meta(n_per_curve: int, k: int, harmonics: int = EFAST_HARMONICS) -> dict:
    omega_max, freqs = efast_frequencies(n_per_curve, k, harmonics)
    return {
        "n_per_curve": n_per_curve,
        "k": k,
        "harmonics": harmonics,
        "omega_max": omega_max,
        "frequencies": freqs.tolist(),
    }


def random_design(factors: list[FactorSpec], n: int, seed: int) -> np.ndarray:
    """Independent seeded draws per cell, directly in factor units.

    Discrete domains are sampled uniformly over their values;
    distributions (and intervals, read as uniform) through their
    inverse CDF.
    """
    if n < 1:
        raise ValueError("random_design requires n >= 1")
    u = Rng(seed, ("random-design",)).random((n, len(factors)))
    return scale_to_domain(u, factors)


def scale_to_domain(unit, factors: list[FactorSpec]) -> np.ndarray:
    """Map unit-hypercube coordinates into factor units, column-wise."""
    rows = unit.rows if isinstance(unit, DesignMatrix) else np.asarray(unit, dtype=float)
    if rows.ndim != 2 or rows.shape[1] != len(factors):
        raise ValueError(
            f"unit matrix has {rows.shape[1] if rows.ndim == 2 else '?'} columns "
            f"for {len(factors)} factors"
        )
    cols = [f.domain.scale(rows[:, j]) for j, f in enumerate(factors)]
    out = np.empty(rows.shape, dtype=object)
    for j, col in enumerate(cols):
        out[:, j] = col
    try:
        return out.astype(float)
    except (TypeError, ValueError):
        return out  # non-numeric discrete values stay as objects


def build_design(doe_type: str, factors: list[FactorSpec], samples: int, seed: int) -> DesignMatrix:
    """Generate the design matrix for a scenario configuration."""
    k = len(factors)
    if k == 0:
        raise UsageError("at least one variation factor is required to build a design")
    meta: dict = {"factors": [f.to_jsonable() for f in factors]}
    unit = True
    if doe_type == "sobol":
        rows = sobol_points(k, 0, samples)
    elif doe_type == "LHS":
        rows = lhs_points(k, samples, seed)
    elif doe_type == "extreme_points":
        rows = extreme_points(k)
    elif doe_type == "OAT":
        rows = oat_design(k)
    elif doe_type == "sobol_indices":
        rows = saltelli_design(samples, k)
        meta.update(saltelli_meta(samples, k))
    elif doe_type == "fast":
        rows = efast_design(samples, k)
        meta.update(efast_meta(samples, k))
    elif doe_type == "distribution_and_discrete":
        rows = random_design(factors, samples, seed)
        unit = False
    else:
        raise UsageError(f"unknown DoE type {doe_type!r}")
    return DesignMatrix(
        design_type=doe_type,
        factor_names=[f.name for f in factors],
        rows=rows,
        base_samples=samples,
        meta=meta,
        unit=unit,
    )
