"""Periodogram on the symmetric search-curve grid.

The grid is s_t = pi * (2t + 1 - n) / n for t = 0..n-1 (n odd), the
same parameterization the frequency-based design uses, so integer
frequencies 1..(n-1)/2 are exactly orthogonal over it.
"""

from __future__ import annotations

import numpy as np


def search_grid(n: int) -> np.ndarray:
    """The n symmetric sample angles spanning (-pi, pi)."""
    t = np.arange(n)
    return np.pi * (2.0 * t + 1.0 - n) / n


def periodogram(signal, use_fft: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Cosine/sine amplitudes of ``signal`` over the search grid.

    Returns (A, B) with A[w-1] = (2/n) * sum_t y_t cos(w s_t) and
    B[w-1] = (2/n) * sum_t y_t sin(w s_t) for w = 1..(n-1)/2.

    Direct summation is the default; ``use_fft`` switches to an
    FFT with the grid's phase correction, identical up to rounding.
    """
    y = np.asarray(signal, dtype=float)
    if y.ndim != 1:
        raise ValueError("periodogram expects a 1-d signal")
    n = y.size
    if n < 3 or n % 2 == 0:
        raise ValueError(f"periodogram requires odd length >= 3, got {n}")
    n_freq = (n - 1) // 2
    omega = np.arange(1, n_freq + 1)

    if use_fft:
        # s_t = 2*pi*t/n + pi*(1-n)/n, so the DFT picks up a constant
        # phase of omega*pi*(1-n)/n per frequency.
        spec = np.fft.fft(y)[1:n_freq + 1]
        phase = np.exp(1j * omega * np.pi * (1.0 - n) / n)
        z = phase * np.conj(spec)
        return (2.0 / n) * z.real, (2.0 / n) * z.imag

    s = search_grid(n)
    angles = omega[:, None] * s[None, :]
    a = (2.0 / n) * (np.cos(angles) @ y)
    b = (2.0 / n) * (np.sin(angles) @ y)
    return a, b
