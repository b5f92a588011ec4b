"""Frequency-based sensitivity indices from search-curve spectra.

Each curve drives one factor at the top frequency; its first-order
share is the spectral power at that frequency's first M harmonics,
and the total effect is everything not attributable to the
complementary factors' low-frequency band.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotAnEfastDesign, ZeroVariance
from ..ingest import RunResults
from ..statlib.fourier import periodogram
from .common import average_replicates


@dataclass(frozen=True)
class EfastIndexResult:
    factor: str
    target_metric: str
    s1: float
    st: float


def efast_indices(rr: RunResults, harmonics: int | None = None) -> list:
    """S1/ST per (factor, metric) from the per-curve periodograms.

    With total spectral variance D, driver variance D_i summed over
    harmonics p*omega_max (p = 1..M) and complementary variance
    D_comp over frequencies up to floor(omega_max / (2M)) * M:
    S1 = D_i / D and ST = 1 - D_comp / D.
    """
    meta = rr.design_meta or {}
    if rr.doe_type != "fast" or "omega_max" not in meta:
        raise NotAnEfastDesign(
            f"results stem from a {rr.doe_type!r} design without curve metadata"
        )
    n = int(meta["n_per_curve"])
    k = int(meta["k"])
    m_harm = int(harmonics if harmonics is not None else meta.get("harmonics", 4))
    omega_max = int(meta["omega_max"])
    if k != len(rr.factor_names):
        raise NotAnEfastDesign(
            f"design metadata says k={k} but results carry {len(rr.factor_names)} factors"
        )

    order, _, metrics = average_replicates(rr)
    if order.size != k * n or list(order) != list(range(k * n)):
        raise NotAnEfastDesign(f"expected {k * n} design rows, got {order.size}")

    cutoff = (omega_max // (2 * m_harm)) * m_harm
    out = []
    for m_idx, metric in enumerate(rr.metric_names):
        values = metrics[:, m_idx].reshape(k, n)
        for f_idx, factor in enumerate(rr.factor_names):
            if np.var(values[f_idx]) <= 0.0:
                raise ZeroVariance(f"metric {metric!r} is constant; indices are undefined")
            amp_cos, amp_sin = periodogram(values[f_idx])
            power = (amp_cos ** 2 + amp_sin ** 2) / 2.0
            total = power.sum()
            driver_idx = np.arange(1, m_harm + 1) * omega_max - 1
            d_driver = power[driver_idx].sum()
            d_comp = power[:cutoff].sum()
            out.append(EfastIndexResult(
                factor=factor,
                target_metric=metric,
                s1=float(d_driver / total),
                st=float(1.0 - d_comp / total),
            ))
    return out
