"""Core lattice algorithms for latred.

This package contains the numerical kernels and domain models. It is
independent of configuration, persistence and the command line.
"""

from latred.core.domain import (
    ApproxFactors,
    Permutation,
    ReducednessNotion,
    ReducednessViolation,
    ReductionParams,
    ReductionReport,
    ReductionVariant,
    SuperIterationBudget,
)
from latred.core.errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvalidDeltaError,
    IterationCapExceededError,
    LatticeError,
    MatrixFormatError,
    NotEffectivelyReducedError,
    NotFullyReducedError,
    NotPositiveDefiniteError,
    PreconditionFailedError,
    SearchTooLargeError,
    SingularBasisError,
    UnsupportedOrderError,
)
from latred.core.linalg import GsoState, cholesky, gram, gso, r_factor
from latred.core.parallel import (
    hybrid_lll_deep,
    parallel_effective_lll,
    parallel_lll_deep,
    ratio_v,
    sorted_cholesky,
    sorted_gso,
    vblast_order,
)
from latred.core.realify import (
    check_reducedness_transfer,
    dual_basis,
    realify_block,
    realify_local,
)
from latred.core.reduction import (
    check_lll_conditions,
    effective_lll_reduce,
    finalize_full_size_reduction,
    is_deep_reduced,
    is_effectively_reduced,
    is_lll_reduced,
    lll_deep_reduce,
    lll_reduce,
)

__all__ = [
    # Domain models
    "ApproxFactors",
    "GsoState",
    "Permutation",
    "ReducednessNotion",
    "ReducednessViolation",
    "ReductionParams",
    "ReductionReport",
    "ReductionVariant",
    "SuperIterationBudget",
    # Errors
    "DimensionMismatchError",
    "IndexOutOfRangeError",
    "InvalidDeltaError",
    "IterationCapExceededError",
    "LatticeError",
    "MatrixFormatError",
    "NotEffectivelyReducedError",
    "NotFullyReducedError",
    "NotPositiveDefiniteError",
    "PreconditionFailedError",
    "SearchTooLargeError",
    "SingularBasisError",
    "UnsupportedOrderError",
    # Linear algebra
    "cholesky",
    "gram",
    "gso",
    "r_factor",
    # Sequential reduction
    "check_lll_conditions",
    "effective_lll_reduce",
    "finalize_full_size_reduction",
    "is_deep_reduced",
    "is_effectively_reduced",
    "is_lll_reduced",
    "lll_deep_reduce",
    "lll_reduce",
    # Parallel forms
    "hybrid_lll_deep",
    "parallel_effective_lll",
    "parallel_lll_deep",
    "ratio_v",
    "sorted_cholesky",
    "sorted_gso",
    "vblast_order",
    # Real/complex
    "check_reducedness_transfer",
    "dual_basis",
    "realify_block",
    "realify_local",
]
