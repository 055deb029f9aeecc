"""Distribution checks on random channel Gram-Schmidt norms."""

import numpy as np
import pytest

from latred.mimo.statistics import (
    KsOutcome,
    chi2_diagonal_ks,
    gs_norm_means,
    min_norm_cdf_slope,
    sample_gs_norms,
)


class TestGsNorms:
    """Test squared GS norms of i.i.d. complex normal matrices."""

    def test_sample_shape(self, rng: np.random.Generator) -> None:
        """Test one row per sample."""
        norms = sample_gs_norms(3, 10, rng)
        assert norms.shape == (10, 3)
        assert np.all(norms > 0)

    @pytest.mark.slow
    def test_means(self, rng: np.random.Generator) -> None:
        """Test E||bhat_i||^2 = 2(n - i)."""
        means = gs_norm_means(4, 4000, rng)
        np.testing.assert_allclose(means, [8.0, 6.0, 4.0, 2.0], rtol=0.1)

    @pytest.mark.slow
    def test_chi_square_fit(self, rng: np.random.Generator) -> None:
        """Test every diagonal entry against its chi-square law."""
        outcomes = chi2_diagonal_ks(4, 2000, rng)
        assert [o.dof for o in outcomes] == [8, 6, 4, 2]
        assert all(o.passes(1e-4) for o in outcomes)

    @pytest.mark.slow
    def test_min_norm_cdf_slope(self, rng: np.random.Generator) -> None:
        """Test that the cdf of the smallest norm starts with slope one."""
        slope = min_norm_cdf_slope(4, 5000, rng)
        assert slope == pytest.approx(1.0, abs=0.2)


class TestKsOutcome:
    """Test KS outcome thresholds."""

    def test_passes(self) -> None:
        """Test the significance comparison."""
        outcome = KsOutcome(index=0, dof=2, statistic=0.1, pvalue=0.02)
        assert outcome.passes()
        assert not outcome.passes(0.05)
