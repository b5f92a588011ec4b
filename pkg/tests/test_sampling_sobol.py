"""Quasi-random sequence contracts: skip-origin, extendability, values."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doelab.errors import DimensionUnsupported
from doelab.sampling import SobolSequenceState, sobol_points

from oracles import van_der_corput


def test_first_point_is_half():
    np.testing.assert_array_equal(sobol_points(1, 0, 1), [[0.5]])


def test_dimension_one_is_bit_reversal():
    # With all m_k = 1 the first dimension is the base-2 radical
    # inverse sequence in Gray-code order: point at internal index n
    # equals vdc(n ^ (n >> 1)).
    pts = sobol_points(1, 0, 256)[:, 0]
    expected = [van_der_corput((n ^ (n >> 1))) for n in range(1, 257)]
    np.testing.assert_allclose(pts, expected, rtol=0, atol=0)
    # As a set, any dyadic block from the origin covers exactly the
    # dyadic rationals (origin itself is skipped).
    block = set(float(v) for v in sobol_points(1, 0, 255)[:, 0]) | {0.0}
    assert block == {van_der_corput(i) for i in range(256)}


def test_empty_request():
    assert sobol_points(2, 0, 0).shape == (0, 2)


def test_extendability_split():
    whole = sobol_points(3, 0, 64)
    parts = np.vstack([sobol_points(3, 0, 32), sobol_points(3, 32, 32)])
    np.testing.assert_array_equal(whole, parts)


@settings(max_examples=30, deadline=None)
@given(
    dim=st.integers(1, 8),
    a=st.integers(0, 200),
    b=st.integers(0, 200),
    c=st.integers(0, 200),
)
def test_extendability_property(dim, a, b, c):
    joined = np.vstack([sobol_points(dim, a, b), sobol_points(dim, a + b, c)])
    np.testing.assert_array_equal(joined, sobol_points(dim, a, b + c))


def test_values_in_unit_interval_all_dims():
    for dim in (1, 2, 7, 16, 33, 64):
        pts = sobol_points(dim, 0, 128)
        assert pts.shape == (128, dim)
        assert np.all(pts >= 0.0) and np.all(pts < 1.0)
        assert not np.any(np.all(pts == 0.0, axis=1))  # origin skipped


def test_dimension_guard():
    with pytest.raises(DimensionUnsupported):
        sobol_points(65, 0, 4)
    with pytest.raises(DimensionUnsupported):
        sobol_points(0, 0, 4)


def test_known_2d_prefix():
    # First points of the standard sequence (origin skipped).
    pts = sobol_points(2, 0, 3)
    np.testing.assert_array_equal(
        pts, [[0.5, 0.5], [0.75, 0.25], [0.25, 0.75]]
    )


def test_balance_low_discrepancy():
    # Internal indices 0..1023 form a complete dyadic block with 512
    # points per half-axis; the skipped origin sits in every lower
    # half, so the 1023 emitted points leave exactly 511 there.
    pts = sobol_points(6, 0, 1023)
    halves = (pts < 0.5).sum(axis=0)
    np.testing.assert_array_equal(halves, np.full(6, 511))


def test_state_cursor_matches_functional_form():
    state = SobolSequenceState(4)
    first = state.take(10)
    second = state.take(5)
    np.testing.assert_array_equal(first, sobol_points(4, 0, 10))
    np.testing.assert_array_equal(second, sobol_points(4, 10, 5))
    assert state.index == 15


def test_direction_number_tables():
    state = SobolSequenceState(3)
    tables = state.direction_numbers
    assert len(tables) == 3
    assert all(len(t) == 32 for t in tables)
    # first dimension: v_k = 2^(32-k); second starts from m = (1,)
    assert tables[0][0] == 2 ** 31
    assert tables[0][31] == 1
    assert tables[1][0] == 2 ** 31
    # all direction integers are odd multiples of their bit position
    for table in tables:
        for k, v in enumerate(table, start=1):
            assert v % (2 ** (32 - k)) == 0
            assert (v >> (32 - k)) % 2 == 1


def test_matches_scipy_reference():
    qmc = pytest.importorskip("scipy.stats.qmc")
    for dim in (1, 3, 8, 21, 64):
        ref = qmc.Sobol(d=dim, scramble=False).random_base2(9)[1:]
        mine = sobol_points(dim, 0, ref.shape[0])
        np.testing.assert_array_equal(mine, ref)
