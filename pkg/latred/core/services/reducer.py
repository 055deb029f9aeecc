"""Variant dispatch for lattice reduction.

This module provides a single entry point that runs any of the reduction
variants on a basis, optionally finalizing effective runs with a full size
reduction and optionally working on the dual basis.
"""

import logging

import numpy as np
import numpy.typing as npt

from latred.core.domain import (
    ComplexMatrix,
    ReductionParams,
    ReductionReport,
    ReductionVariant,
    SortMode,
    SuperIterationBudget,
)
from latred.core.linalg import as_basis, gso, round_gaussian_array
from latred.core.parallel import (
    hybrid_lll_deep,
    parallel_effective_lll,
    parallel_lll_deep,
)
from latred.core.realify import dual_basis
from latred.core.reduction import (
    effective_lll_reduce,
    finalize_full_size_reduction,
    lll_deep_reduce,
    lll_reduce,
)

logger = logging.getLogger(__name__)


class LatticeReducer:
    """Runs one configured reduction variant on bases.

    The reducer is stateless between calls; every call to :meth:`reduce`
    works on a fresh copy of its input.
    """

    def __init__(
        self,
        variant: ReductionVariant = ReductionVariant.STANDARD,
        params: ReductionParams | None = None,
        budget: int | None = None,
        finalize: bool = False,
        dual: bool = False,
        hybrid_parallel_iters: int = 2,
        sort_mode: SortMode = SortMode.QR,
    ) -> None:
        """Initialize the reducer.

        Args:
            variant: Algorithm to run
            params: Reduction parameters (defaults for the variant if None)
            budget: Super-iteration budget of the parallel variants (None
                selects the default for the dimension)
            finalize: Follow effective runs with a full size reduction
            dual: Reduce the dual basis and map the result back
            hybrid_parallel_iters: Parallel rounds of the hybrid variant
            sort_mode: Sorting step of parallel LLL-deep and the hybrid variant
        """
        if budget is not None and budget < 1:
            raise ValueError(f"budget must be at least 1, got {budget}")
        self.variant = variant
        self.params = params or ReductionParams(variant=variant)
        self.budget = budget
        self.finalize = finalize
        self.dual = dual
        self.hybrid_parallel_iters = hybrid_parallel_iters
        self.sort_mode = sort_mode

    def reduce(self, basis: npt.ArrayLike) -> tuple[ComplexMatrix, ReductionReport]:
        """Reduce a basis with the configured variant.

        Returns:
            Reduced basis B @ U and the run report, whose transform maps
            the input basis to the output basis

        Raises:
            SingularBasisError: If the basis is singular
            IterationCapExceededError: If a sequential run reaches its cap
        """
        b = as_basis(basis)
        if not self.dual:
            return self._run(b)

        reduced_dual, report = self._run(dual_basis(b))
        assert report.transform is not None
        # Dual transform U_d maps back to J U_d^-H J on the primal side.
        inverse = round_gaussian_array(np.linalg.inv(report.transform))
        transform = np.ascontiguousarray(inverse.conj().T[::-1, ::-1])
        report.transform = transform
        report.label = "dual" if report.label is None else f"dual {report.label}"
        logger.debug(f"dual reduction mapped back: n={report.n}")
        return b @ transform, report

    def _budget(self) -> SuperIterationBudget | None:
        return None if self.budget is None else SuperIterationBudget(self.budget)

    def _run(self, b: ComplexMatrix) -> tuple[ComplexMatrix, ReductionReport]:
        variant = self.variant
        if variant is ReductionVariant.STANDARD:
            return lll_reduce(b, self.params)
        if variant is ReductionVariant.EFFECTIVE:
            return effective_lll_reduce(b, self.params, finalize=self.finalize)
        if variant is ReductionVariant.DEEP:
            return lll_deep_reduce(b, self.params)
        if variant is ReductionVariant.PARALLEL_EFFECTIVE:
            reduced, report = parallel_effective_lll(b, self.params, self._budget())
            if self.finalize:
                return self._finalize(b, report)
            return reduced, report
        if variant is ReductionVariant.PARALLEL_DEEP:
            return parallel_lll_deep(b, self.params, self._budget(), self.sort_mode)
        if variant is ReductionVariant.HYBRID:
            return hybrid_lll_deep(
                b, self.params, self.hybrid_parallel_iters, self.sort_mode
            )
        raise ValueError(f"Unknown reduction variant: {variant}")

    def _finalize(
        self, b: ComplexMatrix, report: ReductionReport
    ) -> tuple[ComplexMatrix, ReductionReport]:
        """Full size reduction after a parallel effective run.

        Raises:
            NotEffectivelyReducedError: If the run did not converge to an
                effectively reduced basis
        """
        assert report.transform is not None
        state = gso(b @ report.transform)
        state.gs_vectors = None
        state.transform = report.transform.copy()
        state.flops = report.flops
        finalize_full_size_reduction(state, report=report)
        report.transform = state.transform.copy()
        report.label = "finalized"
        return b @ report.transform, report
