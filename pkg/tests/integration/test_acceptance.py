"""End-to-end checks of the reduction guarantees on random bases.

Default runs use reduced trial counts; the ``slow`` variants repeat the same
assertions at full Monte Carlo size.
"""

import math
import time
from typing import Any

import numpy as np
import pytest

from latred.core.domain import (
    ReductionParams,
    ReductionVariant,
    SuperIterationBudget,
)
from latred.core.linalg import gram, gso, r_factor
from latred.core.metrics import (
    basis_quality,
    flop_bounds,
    potential,
    shortest_vector_length,
)
from latred.core.parallel import (
    hybrid_lll_deep,
    parallel_effective_lll,
    parallel_lll_deep,
    sorted_cholesky,
    sorted_gso,
)
from latred.core.realify import (
    check_reducedness_transfer,
    gso_structure_deviation,
    realify_local,
)
from latred.core.reduction import (
    effective_lll_reduce,
    is_deep_reduced,
    is_effectively_reduced,
    is_lll_reduced,
    lll_deep_reduce,
    lll_reduce,
)
from latred.core.services.benchmark import run_bench
from latred.core.services.reducer import LatticeReducer
from latred.mimo.ber import BerConfig, BerPoint, DetectorKind, run_ber
from latred.mimo.channel import ChannelModel, sample_basis
from latred.mimo.constellation import qam_symbols
from latred.mimo.detection import detect_sic, lattice_problem
from latred.mimo.statistics import chi2_diagonal_ks
from tests.helpers import COUNTEREXAMPLE_BASIS, random_basis

pytestmark = pytest.mark.integration


def _trials(quick: int, full: int) -> list[Any]:
    """A quick trial count and a slow full-size one."""
    return [pytest.param(quick), pytest.param(full, marks=pytest.mark.slow)]


def _not_worse(better: BerPoint, worse: BerPoint) -> bool:
    """BER ordering within two standard errors."""
    slack = 2 * max(better.std_error, worse.std_error)
    return better.ber <= worse.ber + slack


def _check_reduction_guarantees(rng: np.random.Generator, trials: int) -> None:
    for n in (4, 8, 16):
        for delta in (0.75, 0.99):
            params = ReductionParams(delta=delta)
            for _ in range(trials):
                b = random_basis(rng, n)
                out, report = lll_reduce(b, params)
                assert is_lll_reduced(out, delta)
                assert basis_quality(out, delta).satisfies_lll_bounds()
                _check_trace(report.potential_trace, report.extremes_trace, delta)

                effective, _ = effective_lll_reduce(b, params)
                assert is_effectively_reduced(effective, delta)
            deep, _ = lll_deep_reduce(random_basis(rng, n), ReductionParams(delta=1.0))
            assert is_deep_reduced(deep, 1.0)


def _check_trace(
    potentials: list[float], extremes: list[tuple[float, float]], delta: float
) -> None:
    drop = math.log(1.0 / delta) - 1e-9
    for before, after in zip(potentials, potentials[1:]):
        assert before - after >= drop
    for (a_before, small_before), (a_after, small_after) in zip(extremes, extremes[1:]):
        assert a_after <= a_before * (1 + 1e-9)
        assert small_after >= small_before * (1 - 1e-9)


class TestReductionGuarantees:
    """Reducedness post-conditions, length bounds and potential traces."""

    def test_post_conditions(self, rng: np.random.Generator) -> None:
        """Test every variant's guarantee on a small ensemble."""
        _check_reduction_guarantees(rng, trials=5)

    @pytest.mark.slow
    def test_post_conditions_full(self, rng: np.random.Generator) -> None:
        """Test every variant's guarantee on the full ensemble."""
        _check_reduction_guarantees(rng, trials=1000)

    def test_lambda_one_bound(self, rng: np.random.Generator) -> None:
        """Test ||b1|| <= alpha^((n-1)/2) lambda_1 at small n."""
        for n in (2, 3, 4):
            for _ in range(10):
                out, _ = lll_reduce(random_basis(rng, n))
                record = basis_quality(out, 0.75)
                assert record.satisfies_lll_bounds(shortest_vector_length(out))


class TestEffectiveEquivalence:
    """Effective LLL against standard LLL."""

    @pytest.mark.parametrize("trials", _trials(30, 1000))
    def test_finalize_equals_standard(
        self, trials: int, rng: np.random.Generator
    ) -> None:
        """Test equal transforms after the final full size reduction."""
        for t in range(trials):
            n = 2 + t % 11
            b = random_basis(rng, n)
            _, finalized = effective_lll_reduce(b, finalize=True)
            _, standard = lll_reduce(b)
            assert finalized.transform is not None
            assert standard.transform is not None
            np.testing.assert_array_equal(finalized.transform, standard.transform)
            assert finalized.swaps == standard.swaps
            bound = flop_bounds(n, 0.75).sr_cost_bound
            assert finalized.full_size_reduction_flops <= bound

    @pytest.mark.parametrize("trials", _trials(200, 10**4))
    def test_sic_identical(self, trials: int, rng: np.random.Generator) -> None:
        """Test that SIC finds the same lattice point on both bases."""
        qam = qam_symbols(16)
        standard = LatticeReducer(ReductionVariant.STANDARD)
        effective = LatticeReducer(ReductionVariant.EFFECTIVE)
        sigma = math.sqrt(2 * 6 / 10 ** 1.5 / 2)
        for _ in range(trials):
            channel = sample_basis(ChannelModel(6), rng)
            levels = rng.integers(0, qam.side, size=(2, 6))
            sent = qam.index_to_coordinate(levels[0], levels[1])
            noise = sigma * (rng.standard_normal(6) + 1j * rng.standard_normal(6))
            problem = lattice_problem(channel, channel @ qam.modulate(sent) + noise, qam)
            reduced_s, report_s = standard.reduce(problem.basis)
            reduced_e, report_e = effective.reduce(problem.basis)
            assert report_s.transform is not None
            assert report_e.transform is not None
            np.testing.assert_array_equal(
                detect_sic(reduced_s, report_s.transform, problem.target),
                detect_sic(reduced_e, report_e.transform, problem.target),
            )


class TestComplexityEnvelopes:
    """Mean iteration and flop counts against the average-case bounds."""

    @pytest.mark.parametrize("trials", _trials(50, 2000))
    def test_bench_bounds(self, trials: int) -> None:
        """Test mean K and mean C1 flops on primal and dual bases."""
        for dual in (False, True):
            rows = run_bench([4, 8, 16], 0.75, trials, seed=17, dual=dual)
            for row in rows:
                assert row.mean_k <= row.bound_k
                assert row.mean_flops_c1 <= row.bound_c1


class TestParallelGuarantees:
    """Fixed-complexity variants."""

    @pytest.mark.parametrize("trials", _trials(10, 500))
    def test_parallel_effective_bound(
        self, trials: int, rng: np.random.Generator
    ) -> None:
        """Test the first-vector bound of converged runs at delta 0.99."""
        params = ReductionParams(delta=0.99, variant=ReductionVariant.PARALLEL_EFFECTIVE)
        for n in (8, 16):
            for _ in range(trials):
                budget = SuperIterationBudget(math.ceil(n * math.log2(n)))
                out, report = parallel_effective_lll(random_basis(rng, n), params, budget)
                if report.converged_early:
                    assert basis_quality(out, 0.99).satisfies_parallel_bound()

    def test_sorted_oracles(self, rng: np.random.Generator) -> None:
        """Test that sorted Cholesky of the Gram matrix equals the sorted QR factor."""
        for trial in range(200):
            b = random_basis(rng, 4 + trial % 3)
            permutation, state = sorted_gso(b)
            chol_perm, r = sorted_cholesky(gram(b))
            assert chol_perm == permutation
            scale = float(np.max(np.abs(r)))
            np.testing.assert_allclose(r, r_factor(state), atol=1e-8 * scale)
            permuted = permutation.apply(b)
            np.testing.assert_allclose(
                r.conj().T @ r, gram(permuted), atol=1e-8 * scale**2
            )

    @pytest.mark.slow
    def test_potential_drop_front_loaded(self, rng: np.random.Generator) -> None:
        """Test that two rounds of parallel LLL-deep give most of the potential drop."""
        fractions = []
        for _ in range(100):
            b = random_basis(rng, 16)
            _, report = parallel_lll_deep(b, budget=SuperIterationBudget(100))
            trace = report.potential_trace
            start = potential(gso(b))
            total = start - trace[-1]
            if total <= 0:
                continue
            fractions.append((start - trace[min(2, len(trace) - 1)]) / total)
        assert sum(fraction >= 0.5 for fraction in fractions) > len(fractions) / 2

    @pytest.mark.slow
    def test_hybrid_faster_than_deep(self, rng: np.random.Generator) -> None:
        """Test that the hybrid beats sequential LLL-deep in wall time at n = 32."""
        bases = [random_basis(rng, 32) for _ in range(100)]
        start = time.perf_counter()
        for b in bases:
            hybrid_lll_deep(b)
        hybrid_time = time.perf_counter() - start
        start = time.perf_counter()
        for b in bases:
            lll_deep_reduce(b, ReductionParams(variant=ReductionVariant.DEEP))
        deep_time = time.perf_counter() - start
        assert hybrid_time < deep_time


class TestRealTransfer:
    """Complex reducedness against the real form."""

    @pytest.mark.parametrize("trials", _trials(50, 1000))
    def test_transfer(self, trials: int, rng: np.random.Generator) -> None:
        """Test real reducedness at 1/2 of complex-reduced bases at 3/4."""
        for t in range(trials):
            out, _ = lll_reduce(random_basis(rng, 2 + t % 7))
            assert check_reducedness_transfer(out, 0.75)

    def test_counterexample(self) -> None:
        """Test the basis that is complex-reduced but not real-reduced at 1."""
        assert is_lll_reduced(COUNTEREXAMPLE_BASIS, 1.0)
        assert not is_lll_reduced(realify_local(COUNTEREXAMPLE_BASIS), 1.0)

    def test_gso_commutes_with_realification(self, rng: np.random.Generator) -> None:
        """Test the real GSO against the realified complex GSO."""
        for t in range(200):
            assert gso_structure_deviation(random_basis(rng, 1 + t % 8)) < 1e-9


class TestChannelStatistics:
    """Distribution of the GS norms of random channels."""

    @pytest.mark.slow
    def test_chi_square(self, rng: np.random.Generator) -> None:
        """Test every diagonal entry at n = 6 with 10^4 samples."""
        outcomes = chi2_diagonal_ks(6, 10**4, rng)
        assert all(outcome.passes(0.01) for outcome in outcomes)


class TestBerTrends:
    """BER ordering of detectors and budgets on paired trials."""

    def _points(self, trials: int, **overrides: object) -> list[BerPoint]:
        values: dict[str, object] = {
            "n": 2,
            "qam_order": 16,
            "snr_grid": [10.0, 20.0],
            "trials": trials,
            "seed": 21,
        }
        values.update(overrides)
        return run_ber(BerConfig.model_validate(values)).points

    @pytest.mark.parametrize("trials", _trials(300, 10**4))
    def test_detector_ordering(self, trials: int) -> None:
        """Test ML <= SIC after reduction <= SIC without reduction."""
        ml = self._points(trials, detector=DetectorKind.ML)
        reduced = self._points(trials)
        plain = self._points(trials, reduction_variant="none")
        for i in range(2):
            assert _not_worse(ml[i], reduced[i])
            assert _not_worse(reduced[i], plain[i])

    @pytest.mark.slow
    @pytest.mark.parametrize("variant", ["parallel-effective", "parallel-deep"])
    def test_budget_monotone(self, variant: str) -> None:
        """Test that more rounds never hurt beyond two standard errors, up to n."""
        n = 4
        config = {
            "n": n,
            "qam_order": 16,
            "snr_grid": [20.0],
            "trials": 5 * 10**4,
            "seed": 5,
            "reduction_variant": variant,
        }
        points = [
            run_ber(
                BerConfig.model_validate({**config, "super_iteration_budget": budget})
            ).points[0]
            for budget in (1, 2, n)
        ]
        for worse, better in zip(points, points[1:]):
            assert _not_worse(better, worse)

    @pytest.mark.slow
    def test_converged_parallel_deep_near_standard(self) -> None:
        """Test that converged parallel LLL-deep stays within twice the LLL BER."""
        config = {"n": 4, "snr_grid": [15.0, 20.0], "seed": 31}
        parallel = self._points(
            2 * 10**4,
            **config,
            reduction_variant="parallel-deep",
            super_iteration_budget=100,
        )
        standard = self._points(2 * 10**4, **config)
        for deep, lll in zip(parallel, standard):
            assert deep.ber <= 2 * lll.ber + 2 * lll.std_error

    @pytest.mark.slow
    def test_detector_ordering_four_antennas(self) -> None:
        """Test ML <= SIC after reduction <= SIC without reduction at 4x4."""
        config = {"n": 4, "qam_order": 4, "seed": 13}
        ml = self._points(5000, **config, detector=DetectorKind.ML)
        reduced = self._points(5000, **config)
        plain = self._points(5000, **config, reduction_variant="none")
        for i in range(2):
            assert _not_worse(ml[i], reduced[i])
            assert _not_worse(reduced[i], plain[i])

    @pytest.mark.slow
    def test_zero_forcing_gains_from_reduction(self) -> None:
        """Test that ZF on an LLL-reduced channel beats ZF on the raw channel."""
        config = {
            "n": 4,
            "snr_grid": [20.0, 25.0],
            "seed": 17,
            "detector": DetectorKind.ZF,
        }
        reduced = self._points(10**4, **config)
        raw = self._points(10**4, **config, reduction_variant="none")
        for r, p in zip(reduced, raw):
            assert _not_worse(r, p)
        assert sum(p.bit_errors for p in reduced) < sum(p.bit_errors for p in raw)

    @pytest.mark.slow
    def test_single_round_loses_at_high_snr(self) -> None:
        """Test that one round of parallel LLL-deep trails converged LLL-deep."""
        config = {
            "n": 4,
            "snr_grid": [20.0, 25.0],
            "seed": 19,
            "reduction_variant": "parallel-deep",
        }
        single = self._points(5 * 10**4, **config, super_iteration_budget=1)
        converged = self._points(5 * 10**4, **config, super_iteration_budget=100)
        for c, s in zip(converged, single):
            assert _not_worse(c, s)
        assert sum(p.bit_errors for p in converged) < sum(p.bit_errors for p in single)
