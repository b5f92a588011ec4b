"""Quasi-random Sobol sequence with random access.

Gray-code construction over 32-bit direction numbers built from the
embedded Joe-Kuo primitive-polynomial tables. Internal index 0 is
the origin point and is never emitted: requesting points (start,
count) yields internal indices start+1 .. start+count, which makes
generated designs extendable -- emitting a prefix and then the rest
gives exactly the same points as one long run.
"""

from __future__ import annotations

import numpy as np

from ..errors import DimensionUnsupported
from .directions import JOE_KUO, MAX_DIMENSION

_BITS = 32
_SCALE = float(2 ** _BITS)

_DIRECTION_CACHE: dict[int, list[list[int]]] = {}


def _direction_numbers(dim: int) -> list[list[int]]:
    """Per-dimension tables of 32 direction integers v_k = m_k * 2^(32-k)."""
    if dim in _DIRECTION_CACHE:
        return _DIRECTION_CACHE[dim]
    tables = []
    for d in range(dim):
        v = [0] * (_BITS + 1)  # 1-indexed
        if d == 0:
            for k in range(1, _BITS + 1):
                v[k] = 1 << (_BITS - k)
        else:
            s, a, m = JOE_KUO[d - 1]
            for k in range(1, min(s, _BITS) + 1):
                v[k] = m[k - 1] << (_BITS - k)
            for k in range(s + 1, _BITS + 1):
                v[k] = v[k - s] ^ (v[k - s] >> s)
                for i in range(1, s):
                    if (a >> (s - 1 - i)) & 1:
                        v[k] ^= v[k - i]
        tables.append(v)
    _DIRECTION_CACHE[dim] = tables
    return tables


def _state_at(index: int, v: list[int]) -> int:
    """XOR state for internal index ``index`` (Gray-code expansion)."""
    gray = index ^ (index >> 1)
    x = 0
    k = 1
    while gray:
        if gray & 1:
            x ^= v[k]
        gray >>= 1
        k += 1
    return x


def sobol_points(dim: int, start: int, count: int) -> np.ndarray:
    """``count`` consecutive Sobol points in [0,1)^dim, from offset ``start``.

    Point i of the result corresponds to internal sequence index
    start + 1 + i (the origin at index 0 is skipped).
    """
    if dim < 1 or dim > MAX_DIMENSION:
        raise DimensionUnsupported(dim, MAX_DIMENSION)
    if start < 0 or count < 0:
        raise ValueError("start and count must be non-negative")
    out = np.empty((count, dim), dtype=float)
    if count == 0:
        return out
    tables = _direction_numbers(dim)
    for d in range(dim):
        v = tables[d]
        x = _state_at(start + 1, v)
        out[0, d] = x / _SCALE
        for i in range(1, count):
            n = start + 1 + i
            # Gray codes of n-1 and n differ in bit ctz(n).
            x ^= v[(n & -n).bit_length()]
            out[i, d] = x / _SCALE
    return out


class SobolSequenceState:
    """Resumable cursor over the sequence for one dimension count.

    The state after emitting i points is a pure function of
    (dimension, i); ``take`` advances the cursor.
    """

    def __init__(self, dimension: int, index: int = 0):
        if dimension < 1 or dimension > MAX_DIMENSION:
            raise DimensionUnsupported(dimension, MAX_DIMENSION)
        self.dimension = dimension
        self.index = int(index)

    @property
    def direction_numbers(self) -> list[list[int]]:
        """32 direction integers per dimension (v_k = m_k * 2^(32-k))."""
        return [v[1:] for v in _direction_numbers(self.dimension)]

    def take(self, count: int) -> np.ndarray:
        pts = sobol_points(self.dimension, self.index, count)
        self.index += count
        return pts
