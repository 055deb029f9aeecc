"""Fixed-complexity reduction structures.

Parallel effective LLL (monotone sweeps of adjacent size reduction and
conditional swaps), sorted Gram-Schmidt and sorted Cholesky, parallel
LLL-deep (alternating full size reduction and sorting), the hybrid
parallel/sequential deep strategy and the V-BLAST ordering.
"""

import logging
import math
import time

import numpy as np
import numpy.typing as npt

from latred.core.domain import (
    ComplexMatrix,
    Permutation,
    ReductionParams,
    ReductionReport,
    ReductionVariant,
    SortMode,
    SuperIterationBudget,
)
from latred.core.errors import (
    IndexOutOfRangeError,
    NotPositiveDefiniteError,
    SingularBasisError,
)
from latred.core.linalg import (
    FlopCounter,
    GsoState,
    as_basis,
    gram,
    gso,
    pivoted_cholesky,
    round_gaussian,
    singularity_tolerance,
)
from latred.core.metrics import extremes, potential
from latred.core.realify import dual_basis
from latred.core.reduction import (
    lll_deep_reduce,
    lovasz_holds,
    size_reduce_pair,
    swap_update,
)

logger = logging.getLogger(__name__)

# Near-equal projected norms count as ties; keeps parallel LLL-deep from
# reordering on rounding noise.
SORT_RTOL = 1e-13

DOLLAR_LABEL = "dollar-equivalent first-order pass"


def _trace(state: GsoState, report: ReductionReport) -> None:
    report.record_trace(potential(state), extremes(state))


def parallel_sweep(
    state: GsoState,
    params: ReductionParams,
    report: ReductionReport,
    visited: list[int] | None = None,
) -> int:
    """One super-iteration: for k = 1..n-1, size-reduce (k, k-1) and swap if
    the Lovász test fails. Returns the number of swaps."""
    swaps = 0
    for k in range(1, state.n):
        if visited is not None:
            visited.append(k)
        size_reduce_pair(state, k, k - 1)
        passed = lovasz_holds(state, k, params.delta, params.lovasz_slack)
        report.record_test(passed)
        if not passed:
            swap_update(state, k)
            swaps += 1
            report.swaps += 1
            _trace(state, report)
    return swaps


def parallel_effective_lll(
    basis: npt.ArrayLike,
    params: ReductionParams | None = None,
    budget: SuperIterationBudget | None = None,
) -> tuple[ComplexMatrix, ReductionReport]:
    """Parallel effective LLL with a fixed super-iteration budget.

    Stops early when a sweep performs no swap; the output is then
    effectively LLL-reduced.

    Raises:
        SingularBasisError: If the basis is singular
    """
    params = params or ReductionParams(variant=ReductionVariant.PARALLEL_EFFECTIVE)
    started = time.perf_counter()
    b = as_basis(basis)
    state = gso(b)
    state.gs_vectors = None
    n = state.n
    budget = budget or SuperIterationBudget.for_parallel_effective(n)
    budget.converged_early = False
    report = ReductionReport(
        variant=ReductionVariant.PARALLEL_EFFECTIVE, n=n, delta=params.delta
    )
    _trace(state, report)
    for _ in range(budget.max_super_iterations):
        swaps = parallel_sweep(state, params, report)
        report.super_iterations += 1
        if swaps == 0:
            budget.converged_early = True
            break
    report.converged_early = budget.converged_early
    report.flops = state.flops
    report.transform = state.transform.copy()
    report.wall_time = time.perf_counter() - started
    logger.debug(
        f"parallel-effective: n={n} sweeps={report.super_iterations} "
        f"swaps={report.swaps} converged={report.converged_early}"
    )
    return b @ state.transform, report


def ratio_v(state: GsoState, i: int, c: float) -> float:
    """Convergence ratio prod_{j<=i} ||bhat_j||^2 / (c^(i(n-i)/2) |det|^(2i/n)).

    ``i`` is a prefix length in 1..n.

    Raises:
        IndexOutOfRangeError: If i is not in 1..n
    """
    n = state.n
    if not 1 <= i <= n:
        raise IndexOutOfRangeError(f"Need 1 <= i <= {n}, got i={i}")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    logs = np.log(state.gs_norms_sq)
    log_v = (
        float(np.sum(logs[:i]))
        - i * (n - i) / 2 * math.log(c)
        - i / n * float(np.sum(logs))
    )
    return math.exp(log_v)


def sorted_gso(
    basis: npt.ArrayLike,
    joint_size_reduce: bool = False,
    rtol: float = 0.0,
) -> tuple[Permutation, GsoState]:
    """Gram-Schmidt that picks the shortest remaining projection at each step.

    Norms within ``rtol`` of the minimum count as ties; ties go to the lowest
    original column index. In joint mode every selected column is also size
    reduced against the columns selected before it (j = i-1 down to 0), so
    the returned basis is sorted and size-reduced. Size reduction leaves
    the projections untouched, so the order is the same in both modes.

    Returns:
        The column permutation and the GSO state of the permuted basis

    Raises:
        SingularBasisError: If the basis is singular
    """
    b = as_basis(basis)
    n = b.shape[1]
    v = b.copy()
    out = b.copy()
    transform = np.eye(n, dtype=np.complex128)
    mu = np.eye(n, dtype=np.complex128)
    norms = np.zeros(n, dtype=np.float64)
    order = list(range(n))
    tolerance = singularity_tolerance(b)
    current = np.sum(np.abs(v) ** 2, axis=0)
    flops = n * n

    for i in range(n):
        if i < n - 1:
            tail = current[i:]
            limit = float(np.min(tail)) * (1.0 + rtol)
            k = i + min(
                (m for m in range(n - i) if tail[m] <= limit),
                key=lambda m: order[i + m],
            )
            if k != i:
                for arr in (v, out, transform):
                    arr[:, [i, k]] = arr[:, [k, i]]
                current[[i, k]] = current[[k, i]]
                mu[[i, k], :i] = mu[[k, i], :i]
                order[i], order[k] = order[k], order[i]
        norms[i] = current[i]
        if norms[i] <= tolerance:
            raise SingularBasisError(
                f"Gram-Schmidt vector {i} vanishes (norm^2={norms[i]:.3e})", index=i
            )
        if joint_size_reduce:
            for j in range(i - 1, -1, -1):
                m = complex(mu[i, j])
                if abs(m.real) < 0.5 and abs(m.imag) < 0.5:
                    continue
                r = round_gaussian(m)
                out[:, i] -= r * out[:, j]
                transform[:, i] -= r * transform[:, j]
                mu[i, : j + 1] -= r * mu[j, : j + 1]
                flops += 2 * n + 2 * (j + 1)
        if i + 1 == n:
            break
        coeffs = (v[:, i].conj() @ v[:, i + 1 :]) / norms[i]
        mu[i + 1 :, i] = coeffs
        v[:, i + 1 :] -= np.outer(v[:, i], coeffs)
        current[i + 1 :] = np.sum(np.abs(v[:, i + 1 :]) ** 2, axis=0)
        flops += 3 * n * (n - i - 1)

    state = GsoState(
        basis=out,
        mu=mu,
        gs_norms_sq=norms,
        transform=transform,
        gs_vectors=v,
        flops=flops,
        tolerance=tolerance,
    )
    return Permutation(tuple(order)), state


def sorted_cholesky(
    matrix: npt.ArrayLike, counter: FlopCounter | None = None, rtol: float = 0.0
) -> tuple[Permutation, ComplexMatrix]:
    """Cholesky factorization of a Gram matrix with minimum-diagonal pivoting.

    Equivalent to :func:`sorted_gso` on any basis with this Gram matrix.

    Raises:
        NotPositiveDefiniteError: If the matrix is not positive definite
    """
    return pivoted_cholesky(matrix, pivot=True, counter=counter, rtol=rtol)


def cholesky_gso(
    basis: ComplexMatrix, rtol: float = 0.0
) -> tuple[Permutation, GsoState]:
    """Sorted GSO data read off a pivoted Cholesky factor of the Gram matrix.

    With R the factor of the sorted basis, ``||bhat_i||^2 = r_ii^2`` and
    ``mu[i, j] = r_ji / r_jj``. The flop count covers the Gram product and
    the factorization; Gram-Schmidt vectors are not formed.

    Raises:
        SingularBasisError: If the basis is singular
    """
    counter = FlopCounter()
    try:
        permutation, r = sorted_cholesky(gram(basis, counter), counter, rtol=rtol)
    except NotPositiveDefiniteError as e:
        raise SingularBasisError(f"Basis is singular: {e}", index=e.index) from e
    diag = np.real(np.diag(r))
    state = GsoState(
        basis=permutation.apply(basis),
        mu=np.ascontiguousarray((r / diag[:, None]).T),
        gs_norms_sq=diag**2,
        transform=permutation.as_matrix(),
        flops=counter.count,
        tolerance=singularity_tolerance(basis),
    )
    return permutation, state


def _sort_round(
    basis: ComplexMatrix, mode: SortMode
) -> tuple[Permutation, GsoState, bool]:
    """Sort a basis with the given mode; the flag reports joint size reductions."""
    if mode is SortMode.CHOLESKY:
        permutation, state = cholesky_gso(basis, rtol=SORT_RTOL)
        return permutation, state, False
    joint = mode is SortMode.JOINT
    permutation, state = sorted_gso(basis, joint_size_reduce=joint, rtol=SORT_RTOL)
    reduced = joint and not np.array_equal(state.transform, permutation.as_matrix())
    return permutation, state, reduced


def parallel_lll_deep(
    basis: npt.ArrayLike,
    params: ReductionParams | None = None,
    budget: SuperIterationBudget | None = None,
    sort_mode: SortMode = SortMode.QR,
) -> tuple[ComplexMatrix, ReductionReport]:
    """Parallel LLL-deep: sort once, then alternate full size reduction and
    sorting until nothing changes or the budget runs out.

    ``sort_mode`` selects how a round sorts: sorted GSO after a separate
    size reduction pass, sorted GSO with the size reduction folded in, or
    sorted Cholesky of the Gram matrix. A converged output is size-reduced
    and sorted, i.e. deep-reduced with delta = 1. A budget of one round is
    labelled as the DOLLAR-equivalent first-order pass.

    Raises:
        SingularBasisError: If the basis is singular
    """
    params = params or ReductionParams(variant=ReductionVariant.PARALLEL_DEEP)
    started = time.perf_counter()
    b = as_basis(basis)
    permutation, state, _ = _sort_round(b, sort_mode)
    n = state.n
    budget = budget or SuperIterationBudget.for_parallel_deep(n)
    budget.converged_early = False
    report = ReductionReport(variant=ReductionVariant.PARALLEL_DEEP, n=n, delta=1.0)
    report.insertions += permutation.moved()
    _trace(state, report)

    for _ in range(budget.max_super_iterations):
        updated = False
        if sort_mode is not SortMode.JOINT:
            for k in range(1, n):
                for j in range(k - 1, -1, -1):
                    if size_reduce_pair(state, k, j) != 0:
                        updated = True
        permutation, sorted_state, reduced = _sort_round(state.basis, sort_mode)
        sorted_state.transform = state.transform @ sorted_state.transform
        sorted_state.flops += state.flops
        state = sorted_state
        updated = updated or reduced
        if not permutation.is_identity():
            updated = True
            report.insertions += permutation.moved()
        report.super_iterations += 1
        _trace(state, report)
        if not updated:
            budget.converged_early = True
            break

    report.converged_early = budget.converged_early
    if budget.max_super_iterations == 1:
        report.label = DOLLAR_LABEL
    report.flops = state.flops
    report.transform = state.transform.copy()
    report.wall_time = time.perf_counter() - started
    logger.debug(
        f"parallel-deep: n={n} rounds={report.super_iterations} "
        f"converged={report.converged_early}"
    )
    return b @ state.transform, report


def hybrid_lll_deep(
    basis: npt.ArrayLike,
    params: ReductionParams | None = None,
    parallel_iters: int = 2,
    sort_mode: SortMode = SortMode.QR,
) -> tuple[ComplexMatrix, ReductionReport]:
    """A few rounds of parallel LLL-deep followed by sequential LLL-deep.

    With ``parallel_iters == 0`` this is plain :func:`lll_deep_reduce`.

    Raises:
        SingularBasisError: If the basis is singular
        IterationCapExceededError: If the sequential phase reaches its cap
    """
    params = params or ReductionParams(variant=ReductionVariant.HYBRID)
    if parallel_iters < 0:
        raise ValueError(f"parallel_iters must be non-negative, got {parallel_iters}")
    if parallel_iters == 0:
        return lll_deep_reduce(basis, params)
    b = as_basis(basis)
    warm, report = parallel_lll_deep(
        b, params, SuperIterationBudget(parallel_iters), sort_mode
    )
    _, sequential = lll_deep_reduce(warm, params)
    report.absorb(sequential)
    report.variant = ReductionVariant.HYBRID
    report.delta = params.delta
    report.label = None
    assert report.transform is not None
    return b @ report.transform, report


def vblast_order(basis: npt.ArrayLike) -> Permutation:
    """Column order maximizing the shortest Gram-Schmidt vector.

    Sorted GSO on the dual basis, read backwards.

    Raises:
        SingularBasisError: If the basis is singular
    """
    dual_order, _ = sorted_gso(dual_basis(basis))
    reversal = Permutation(tuple(range(dual_order.size - 1, -1, -1)))
    return reversal.then(dual_order).then(reversal)
