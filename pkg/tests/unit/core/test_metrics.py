"""Unit tests for potentials, complexity bounds and basis quality."""

import math

import numpy as np
import pytest

from latred.core.domain import ReductionParams
from latred.core.errors import InvalidDeltaError
from latred.core.linalg import gso
from latred.core.metrics import (
    basis_quality,
    extremes,
    flop_bounds,
    iteration_bound,
    k_minus_bound,
    potential,
    shortest_vector_length,
)
from latred.core.reduction import lll_reduce
from tests.helpers import random_basis


class TestPotential:
    """Test the potential function and the GS norm extremes."""

    def test_identity(self) -> None:
        """Test that an orthonormal basis has potential zero."""
        assert potential(gso(np.eye(4))) == 0.0

    def test_diagonal(self) -> None:
        """Test the weighted log sum on a diagonal basis."""
        state = gso(np.diag([2.0, 1.0, 3.0]))
        expected = 2 * math.log(4.0) + 1 * math.log(1.0) + 0 * math.log(9.0)
        assert potential(state) == pytest.approx(expected)

    def test_extremes(self) -> None:
        """Test the largest and smallest squared GS norm."""
        assert extremes(gso(np.diag([2.0, 1.0, 3.0]))) == pytest.approx((9.0, 1.0))

    def test_reduction_never_increases_potential(
        self, rng: np.random.Generator
    ) -> None:
        """Test that the trace is non-increasing."""
        _, report = lll_reduce(random_basis(rng, 8))
        trace = report.potential_trace
        assert all(b <= a + 1e-9 for a, b in zip(trace, trace[1:]))


class TestBounds:
    """Test the average-case complexity envelopes."""

    def test_k_minus_closed_form(self) -> None:
        """Test the swap bound at n = 4, delta = 3/4."""
        log_term = math.log(8) / math.log(4 / 3)
        assert k_minus_bound(4, 0.75) == pytest.approx(6 * (log_term + 1))

    def test_iteration_bound_closed_form(self) -> None:
        """Test the test-count bound at n = 4, delta = 3/4."""
        log_term = math.log(8) / math.log(4 / 3)
        assert iteration_bound(4, 0.75) == pytest.approx(12 * (log_term + 1) + 4)

    def test_iteration_bound_is_twice_swaps_plus_n(self) -> None:
        """Test K <= 2 K^- + n in the envelopes."""
        for n in (2, 5, 16):
            assert iteration_bound(n, 0.9) == pytest.approx(
                2 * k_minus_bound(n, 0.9) + n
            )

    def test_flop_bounds(self) -> None:
        """Test the final size reduction cost."""
        bounds = flop_bounds(6, 0.75)
        assert bounds.sr_cost_bound == pytest.approx(4 / 3 * 6 * 5 * 4)
        assert bounds.sr_per_iteration_bound == pytest.approx(108.0)
        assert bounds.k_total_bound == pytest.approx(iteration_bound(6, 0.75))
        assert bounds.flop_bound_c1 > bounds.sr_cost_bound

    def test_rejects_small_n(self) -> None:
        """Test that n = 1 has no bound."""
        with pytest.raises(ValueError):
            iteration_bound(1, 0.75)

    @pytest.mark.parametrize("delta", [0.5, 1.0, 1.2])
    def test_rejects_delta(self, delta: float) -> None:
        """Test that delta must lie strictly inside (1/2, 1)."""
        with pytest.raises(InvalidDeltaError):
            flop_bounds(4, delta)


class TestShortestVector:
    """Test the exact shortest-vector search."""

    def test_basis_vector_is_shortest(self) -> None:
        """Test a lattice whose first vector is shortest."""
        assert shortest_vector_length(np.diag([1.0, 2.0])) == pytest.approx(1.0)

    def test_combination_is_shortest(self) -> None:
        """Test a lattice whose shortest vector is b2 - b1."""
        b = np.array([[1.0, 0.9], [0.0, 0.1]])
        assert shortest_vector_length(b) == pytest.approx(math.sqrt(0.02), rel=1e-9)

    def test_gaussian_coefficients(self) -> None:
        """Test that imaginary coefficients are searched."""
        b = np.array([[1.0, 0.9j], [0.0, 0.1]])
        assert shortest_vector_length(b) == pytest.approx(math.sqrt(0.02), rel=1e-9)


class TestBasisQuality:
    """Test the reduced-basis length bounds."""

    def test_reduced_bases_meet_bounds(self, rng: np.random.Generator) -> None:
        """Test ||b1|| and prod ||b_i|| bounds, and the lambda_1 bound for small n."""
        for n in (2, 3, 4):
            for _ in range(5):
                out, _ = lll_reduce(random_basis(rng, n), ReductionParams(delta=0.75))
                record = basis_quality(out, 0.75)
                lambda1 = shortest_vector_length(out)
                assert lambda1 <= record.b1_norm * (1 + 1e-9)
                assert record.satisfies_lll_bounds(lambda1)

    def test_hadamard_inequality(self, rng: np.random.Generator) -> None:
        """Test |det B| <= prod ||b_i||."""
        record = basis_quality(random_basis(rng, 5))
        assert record.abs_det <= record.prod_norms * (1 + 1e-9)
        assert record.abs_det == pytest.approx(record.det_root**5, rel=1e-9)

    def test_bound_values(self) -> None:
        """Test the bound factors on the identity."""
        record = basis_quality(np.eye(3), 0.75)
        assert record.b1_norm == pytest.approx(1.0)
        assert record.b1_det_bound == pytest.approx(2.0)
        assert record.b1_lambda_factor == pytest.approx(4.0)
