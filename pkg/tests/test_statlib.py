"""Numerical kernel checks against independent oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doelab.errors import DomainError, NotPositiveDefinite
from doelab.statlib import (
    Rng,
    cholesky_factor,
    cholesky_solve,
    f_cdf,
    ln_gamma,
    normal_ppf,
    periodogram,
    reg_incomplete_beta,
    search_grid,
)

from oracles import f_cdf_quadrature, normal_ppf_bisect


class TestLnGamma:
    def test_integer_anchors(self):
        assert ln_gamma(1.0) == pytest.approx(0.0, abs=1e-12)
        assert ln_gamma(2.0) == pytest.approx(0.0, abs=1e-12)

    def test_half(self):
        assert ln_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-12)

    def test_against_lgamma_over_range(self):
        for x in np.logspace(-3, 6, 200):
            assert ln_gamma(float(x)) == pytest.approx(math.lgamma(x), rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            ln_gamma(0.0)
        with pytest.raises(DomainError):
            ln_gamma(-1.5)


class TestIncompleteBeta:
    def test_uniform_case(self):
        for x in (0.0, 0.1, 0.37, 0.5, 0.99, 1.0):
            assert reg_incomplete_beta(1.0, 1.0, x) == pytest.approx(x, abs=1e-12)

    def test_endpoints(self):
        assert reg_incomplete_beta(3.2, 0.7, 0.0) == 0.0
        assert reg_incomplete_beta(3.2, 0.7, 1.0) == 1.0

    def test_symmetry_midpoint(self):
        assert reg_incomplete_beta(2.0, 2.0, 0.5) == pytest.approx(0.5, abs=1e-12)

    def test_reflection_identity(self):
        for a, b, x in [(0.5, 4.0, 0.3), (7.0, 2.5, 0.8), (1.5, 1.5, 0.05)]:
            left = reg_incomplete_beta(a, b, x)
            right = 1.0 - reg_incomplete_beta(b, a, 1.0 - x)
            assert left == pytest.approx(right, abs=1e-12)

    @settings(max_examples=60)
    @given(
        a=st.floats(0.2, 20.0),
        b=st.floats(0.2, 20.0),
        x=st.floats(0.01, 0.98),
        dx=st.floats(0.001, 0.02),
    )
    def test_monotone_in_x(self, a, b, x, dx):
        assert reg_incomplete_beta(a, b, x + dx) >= reg_incomplete_beta(a, b, x)


class TestFCdf:
    def test_median_symmetry(self):
        for d in (1, 2, 5, 10):
            assert f_cdf(1.0, d, d) == pytest.approx(0.5, abs=1e-10)

    def test_zero(self):
        assert f_cdf(0.0, 3, 7) == 0.0

    def test_against_quadrature_oracle(self):
        cases = [(1.5, 1, 4), (0.7, 3, 9), (2.4, 5, 2), (1.0, 10, 10), (4.1, 2, 30)]
        for x, d1, d2 in cases:
            assert f_cdf(x, d1, d2) == pytest.approx(
                f_cdf_quadrature(x, d1, d2), abs=5e-9
            )

    def test_anova_example_value(self):
        # frozen from the quadrature oracle: P(F(1,4) <= 1.5) = 0.712
        assert f_cdf(1.5, 1, 4) == pytest.approx(0.712, abs=5e-4)

    def test_monotone_in_x(self):
        grid = np.linspace(0.0, 8.0, 200)
        values = [f_cdf(float(x), 4, 11) for x in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))


class TestNormalPpf:
    def test_center(self):
        assert normal_ppf(0.5) == pytest.approx(0.0, abs=1e-12)

    def test_known_quantile(self):
        assert normal_ppf(0.975) == pytest.approx(1.959964, abs=1e-6)

    def test_symmetry(self):
        for p in (1e-9, 1e-4, 0.3, 0.45):
            assert normal_ppf(p) + normal_ppf(1.0 - p) == pytest.approx(0.0, abs=1e-8)

    def test_against_erf_bisection_oracle(self):
        for p in (1e-10, 1e-6, 0.01, 0.2, 0.5, 0.8, 0.99, 1 - 1e-6):
            assert normal_ppf(p) == pytest.approx(normal_ppf_bisect(p), abs=1e-8)

    def test_domain(self):
        for p in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(DomainError):
                normal_ppf(p)


class TestPeriodogram:
    def test_pure_cosine(self):
        s = search_grid(201)
        a, b = periodogram(np.cos(3 * s))
        assert a[2] == pytest.approx(1.0, abs=1e-9)
        mask = np.ones(a.size, bool)
        mask[2] = False
        assert np.max(np.abs(a[mask])) < 1e-9
        assert np.max(np.abs(b)) < 1e-9

    def test_pure_sine_amplitude(self):
        s = search_grid(201)
        a, b = periodogram(2.0 * np.sin(5 * s))
        assert b[4] == pytest.approx(2.0, abs=1e-9)
        assert abs(a[4]) < 1e-9

    def test_constant_signal(self):
        a, b = periodogram(np.full(101, 3.7))
        assert np.max(np.abs(a)) < 1e-9
        assert np.max(np.abs(b)) < 1e-9

    def test_fft_path_matches_direct(self):
        rng = Rng(11, ("periodogram-test",))
        y = rng.random(4097) - 0.5
        a1, b1 = periodogram(y)
        a2, b2 = periodogram(y, use_fft=True)
        np.testing.assert_allclose(a1, a2, atol=1e-10)
        np.testing.assert_allclose(b1, b2, atol=1e-10)

    def test_rejects_even_length(self):
        with pytest.raises(ValueError):
            periodogram(np.zeros(10))


class TestCholesky:
    def test_identity(self):
        b = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
        np.testing.assert_allclose(cholesky_solve(np.eye(3), b), b)

    def test_hand_elimination_2x2(self):
        a = np.array([[4.0, 2.0], [2.0, 3.0]])
        x = cholesky_solve(a, np.array([2.0, 3.0]))
        np.testing.assert_allclose(x, [0.0, 1.0], atol=1e-12)

    def test_hilbert_residual(self):
        n = 4
        a = np.array([[1.0 / (i + j + 1) for j in range(n)] for i in range(n)])
        b = np.ones(n)
        x = cholesky_solve(a, b)
        residual = np.linalg.norm(a @ x - b) / np.linalg.norm(b)
        assert residual < 1e-8

    def test_jitter_retry_marginal_matrix(self):
        a = np.array([[1.0, 1.0], [1.0, 1.0]])  # PSD, rank 1
        l_mat, jitter = cholesky_factor(a)
        assert jitter > 0.0
        assert np.all(np.isfinite(l_mat))

    def test_not_positive_definite(self):
        with pytest.raises(NotPositiveDefinite):
            cholesky_factor(np.array([[1.0, 0.0], [0.0, -5.0]]))


class TestRng:
    def test_same_seed_same_stream(self):
        a = Rng(42).random(100)
        b = Rng(42).random(100)
        np.testing.assert_array_equal(a, b)

    def test_substreams_differ_and_reproduce(self):
        base = Rng(7)
        s1 = base.substream("x", 1).random(50)
        s2 = base.substream("x", 2).random(50)
        assert not np.array_equal(s1, s2)
        np.testing.assert_array_equal(s1, Rng(7).substream("x", 1).random(50))

    def test_pinned_values_guard_stream_stability(self):
        # Frozen once; a change here means reproducibility of every
        # seeded artifact in the toolbox is broken.
        np.testing.assert_allclose(
            Rng(0).random(3),
            [0.014067035665647709, 0.2577672456246177, 0.47156538101528966],
            rtol=0.0, atol=0.0,
        )
