"""Sequential lattice reduction algorithms.

Pairwise size reduction, the Lovász test, adjacent swaps with O(n) GSO
updates, standard LLL, effective LLL (size reduction only against the
preceding vector), LLL with deep insertion, and reducedness checkers.

All functions use 0-based column indices. The ``run_*`` functions work on
a :class:`GsoState` in place; the ``*_reduce`` functions take a basis and
return ``(B @ U, report)``.
"""

import logging
import time

import numpy as np
import numpy.typing as npt

from latred.core.domain import (
    ComplexMatrix,
    GaussianInteger,
    ReducednessNotion,
    ReducednessViolation,
    ReductionParams,
    ReductionReport,
    ReductionVariant,
    validate_delta,
)
from latred.core.errors import (
    IndexOutOfRangeError,
    IterationCapExceededError,
    NotEffectivelyReducedError,
)
from latred.core.linalg import (
    GsoState,
    as_basis,
    gso,
    orthogonalize_tail,
    round_gaussian,
)
from latred.core.metrics import extremes, potential

logger = logging.getLogger(__name__)

CHECK_SLACK = 1e-9


def _check_pair(state: GsoState, k: int, j: int) -> None:
    if not 0 <= j < k < state.n:
        raise IndexOutOfRangeError(
            f"Need 0 <= j < k < {state.n}, got k={k}, j={j}"
        )


def _check_adjacent(state: GsoState, k: int) -> None:
    if not 1 <= k < state.n:
        raise IndexOutOfRangeError(f"Need 1 <= k < {state.n}, got k={k}")


def size_reduce_pair(state: GsoState, k: int, j: int) -> GaussianInteger:
    """Size-reduce b_k against b_j (j < k).

    Fires when |Re mu_kj| >= 1/2 or |Im mu_kj| >= 1/2 and subtracts the
    rounded coefficient times b_j. GS norms are untouched.

    Returns:
        The Gaussian integer that was subtracted (0 if nothing changed)

    Raises:
        IndexOutOfRangeError: If the indices do not satisfy 0 <= j < k < n
    """
    _check_pair(state, k, j)
    m = complex(state.mu[k, j])
    if abs(m.real) < 0.5 and abs(m.imag) < 0.5:
        return 0j
    r = round_gaussian(m)
    state.basis[:, k] -= r * state.basis[:, j]
    state.transform[:, k] -= r * state.transform[:, j]
    state.mu[k, : j + 1] -= r * state.mu[j, : j + 1]
    state.flops += 2 * state.n + 2 * (j + 1)
    return r


def lovasz_holds(
    state: GsoState, k: int, delta: float, slack: float = 1e-12
) -> bool:
    """Lovász test between positions k-1 and k.

    Evaluated as ||bhat_k||^2 + |mu_k,k-1|^2 ||bhat_k-1||^2 >= delta ||bhat_k-1||^2
    with a relative slack, costing 3 flops.

    Raises:
        IndexOutOfRangeError: If k is not in 1..n-1
    """
    _check_adjacent(state, k)
    prev = float(state.gs_norms_sq[k - 1])
    lhs = float(state.gs_norms_sq[k]) + abs(complex(state.mu[k, k - 1])) ** 2 * prev
    state.flops += 3
    return lhs >= (delta - slack) * prev


def swap_update(state: GsoState, k: int) -> None:
    """Swap columns k-1 and k and update the GSO in O(n).

    Raises:
        IndexOutOfRangeError: If k is not in 1..n-1
    """
    _check_adjacent(state, k)
    n = state.n
    j = k - 1
    mu = state.mu
    norms = state.gs_norms_sq
    m = complex(mu[k, j])
    b_prev = float(norms[j])
    b_cur = float(norms[k])
    new_prev = b_cur + abs(m) ** 2 * b_prev
    m_new = m.conjugate() * b_prev / new_prev
    new_cur = b_cur * b_prev / new_prev

    state.basis[:, [j, k]] = state.basis[:, [k, j]]
    state.transform[:, [j, k]] = state.transform[:, [k, j]]
    if state.gs_vectors is not None:
        g = state.gs_vectors
        hat_prev = g[:, k] + m * g[:, j]
        hat_cur = g[:, j] - m_new * hat_prev
        g[:, j] = hat_prev
        g[:, k] = hat_cur

    if j > 0:
        mu[[j, k], :j] = mu[[k, j], :j]
    if k + 1 < n:
        a = mu[k + 1 :, j].copy()
        b = mu[k + 1 :, k].copy()
        col_cur = a - m * b
        mu[k + 1 :, k] = col_cur
        mu[k + 1 :, j] = b + m_new * col_cur
    mu[k, j] = m_new
    norms[j] = new_prev
    norms[k] = new_cur
    state.flops += 6 * (n - k - 1) + 7


def _trace(state: GsoState, report: ReductionReport) -> None:
    report.record_trace(potential(state), extremes(state))


def _cap_exceeded(cap: int, variant: ReductionVariant) -> IterationCapExceededError:
    return IterationCapExceededError(
        f"{variant.value} reduction exceeded {cap} iterations", cap=cap
    )


def run_lll(
    state: GsoState,
    params: ReductionParams,
    *,
    full_size_reduction: bool = True,
    report: ReductionReport | None = None,
) -> ReductionReport:
    """Run LLL on a GSO state in place.

    With ``full_size_reduction`` false this is effective LLL: only the pair
    (k, k-1) is size-reduced, which leaves the swap sequence and the GS
    vectors identical to standard LLL.

    Raises:
        IterationCapExceededError: If the iteration cap is reached
    """
    n = state.n
    variant = (
        ReductionVariant.STANDARD
        if full_size_reduction
        else ReductionVariant.EFFECTIVE
    )
    if report is None:
        report = ReductionReport(variant=variant, n=n, delta=params.delta)
    cap = params.iteration_cap(n)
    _trace(state, report)
    k = 1
    while k < n:
        if report.iterations >= cap:
            raise _cap_exceeded(cap, variant)
        size_reduce_pair(state, k, k - 1)
        passed = lovasz_holds(state, k, params.delta, params.lovasz_slack)
        report.record_test(passed)
        if not passed:
            swap_update(state, k)
            report.swaps += 1
            _trace(state, report)
            k = max(k - 1, 1)
            continue
        if full_size_reduction:
            before = state.flops
            for j in range(k - 2, -1, -1):
                size_reduce_pair(state, k, j)
            report.full_size_reduction_flops += state.flops - before
        k += 1
    report.flops = state.flops
    report.transform = state.transform
    return report


def _prepare(basis: npt.ArrayLike, keep_vectors: bool) -> tuple[ComplexMatrix, GsoState]:
    b = as_basis(basis)
    state = gso(b)
    if not keep_vectors:
        state.gs_vectors = None
    return b, state


def _finish(
    b: ComplexMatrix, state: GsoState, report: ReductionReport, started: float
) -> tuple[ComplexMatrix, ReductionReport]:
    report.wall_time = time.perf_counter() - started
    report.transform = state.transform.copy()
    logger.debug(
        f"{report.variant.value}: n={report.n} K={report.iterations} "
        f"swaps={report.swaps} insertions={report.insertions} flops={report.flops}"
    )
    return b @ state.transform, report


def lll_reduce(
    basis: npt.ArrayLike, params: ReductionParams | None = None
) -> tuple[ComplexMatrix, ReductionReport]:
    """Standard complex LLL.

    Returns:
        Reduced basis B @ U and the run report

    Raises:
        SingularBasisError: If the basis is singular
        IterationCapExceededError: If the iteration cap is reached
    """
    params = params or ReductionParams()
    started = time.perf_counter()
    b, state = _prepare(basis, keep_vectors=False)
    report = run_lll(state, params, full_size_reduction=True)
    return _finish(b, state, report, started)


def finalize_full_size_reduction(
    state: GsoState,
    delta: float | None = None,
    report: ReductionReport | None = None,
) -> GsoState:
    """Size-reduce every b_k against b_{k-2}, ..., b_0 on an effectively reduced state.

    Raises:
        NotEffectivelyReducedError: If the adjacent size conditions (or the
            Lovász conditions, when delta is given) do not hold
    """
    n = state.n
    for i in range(1, n):
        m = complex(state.mu[i, i - 1])
        if max(abs(m.real), abs(m.imag)) > 0.5 + CHECK_SLACK:
            raise NotEffectivelyReducedError(
                f"mu[{i},{i - 1}] = {m:.6g} is not size-reduced"
            )
        if delta is not None:
            prev = float(state.gs_norms_sq[i - 1])
            lhs = float(state.gs_norms_sq[i]) + abs(m) ** 2 * prev
            if lhs < (delta - CHECK_SLACK) * prev:
                raise NotEffectivelyReducedError(
                    f"Lovász condition fails between {i - 1} and {i}"
                )
    before = state.flops
    for k in range(2, n):
        for j in range(k - 2, -1, -1):
            size_reduce_pair(state, k, j)
    if report is not None:
        report.full_size_reduction_flops += state.flops - before
        report.flops = state.flops
        report.transform = state.transform
    return state


def effective_lll_reduce(
    basis: npt.ArrayLike,
    params: ReductionParams | None = None,
    *,
    finalize: bool = False,
) -> tuple[ComplexMatrix, ReductionReport]:
    """Effective LLL, optionally followed by a final full size reduction.

    Raises:
        SingularBasisError: If the basis is singular
        IterationCapExceededError: If the iteration cap is reached
    """
    params = params or ReductionParams()
    started = time.perf_counter()
    b, state = _prepare(basis, keep_vectors=False)
    report = run_lll(state, params, full_size_reduction=False)
    if finalize:
        finalize_full_size_reduction(state, report=report)
        report.label = "finalized"
    return _finish(b, state, report, started)


def deep_insert(state: GsoState, k: int, i: int) -> None:
    """Move b_k in front of b_i and recompute the GSO of columns i..n-1."""
    n = state.n
    if not 0 <= i < k < n:
        raise IndexOutOfRangeError(f"Need 0 <= i < k < {n}, got i={i}, k={k}")
    if state.gs_vectors is None:
        raise ValueError("Deep insertion needs the Gram-Schmidt vectors")
    order = [*range(i), k, *range(i, k), *range(k + 1, n)]
    state.basis = state.basis[:, order]
    state.transform = state.transform[:, order]
    state.gs_vectors[:, i:] = state.basis[:, i:]
    state.flops += orthogonalize_tail(
        state.gs_vectors, state.mu, state.gs_norms_sq, i, state.tolerance
    )


def _projected_tails(state: GsoState, k: int) -> npt.NDArray[np.float64]:
    """tails[i] = ||pi_i(b_k)||^2 = sum_{j=i..k} |mu_kj|^2 ||bhat_j||^2."""
    weights = np.abs(state.mu[k, : k + 1]) ** 2 * state.gs_norms_sq[: k + 1]
    return np.cumsum(weights[::-1])[::-1]


def run_lll_deep(
    state: GsoState,
    params: ReductionParams,
    report: ReductionReport | None = None,
) -> ReductionReport:
    """LLL with deep insertion (unbounded window) on a GSO state in place.

    Raises:
        IterationCapExceededError: If the iteration cap is reached
    """
    n = state.n
    if report is None:
        report = ReductionReport(variant=ReductionVariant.DEEP, n=n, delta=params.delta)
    cap = params.iteration_cap(n, deep=True)
    threshold = params.delta - params.lovasz_slack
    _trace(state, report)
    k = 1
    while k < n:
        if report.iterations >= cap:
            raise _cap_exceeded(cap, ReductionVariant.DEEP)
        for j in range(k - 1, -1, -1):
            size_reduce_pair(state, k, j)
        tails = _projected_tails(state, k)
        state.flops += 2 * (k + 1)
        violating = np.nonzero(tails[:k] < threshold * state.gs_norms_sq[:k])[0]
        report.record_test(violating.size == 0)
        if violating.size == 0:
            k += 1
            continue
        i = int(violating[0])
        deep_insert(state, k, i)
        report.insertions += 1
        _trace(state, report)
        k = max(i, 1)
    report.flops = state.flops
    report.transform = state.transform
    return report


def lll_deep_reduce(
    basis: npt.ArrayLike, params: ReductionParams | None = None
) -> tuple[ComplexMatrix, ReductionReport]:
    """LLL with deep insertion.

    Raises:
        SingularBasisError: If the basis is singular
        IterationCapExceededError: If the iteration cap is reached
    """
    params = params or ReductionParams(variant=ReductionVariant.DEEP)
    started = time.perf_counter()
    b, state = _prepare(basis, keep_vectors=True)
    report = run_lll_deep(state, params)
    return _finish(b, state, report, started)


def check_lll_conditions(
    basis: npt.ArrayLike,
    delta: float,
    notion: ReducednessNotion = ReducednessNotion.LLL,
    slack: float = CHECK_SLACK,
) -> list[ReducednessViolation]:
    """List every violated condition of the given reduction notion.

    The GSO is recomputed from scratch. ``delta`` may go down to 1/4 so that
    real bases can be checked against real LLL parameters.

    Raises:
        SingularBasisError: If the basis is singular
        InvalidDeltaError: If delta is outside (1/4, 1]
    """
    validate_delta(delta, lower=0.25)
    state = gso(basis)
    n = state.n
    mu = state.mu
    norms = state.gs_norms_sq
    violations: list[ReducednessViolation] = []

    for i in range(1, n):
        columns = [i - 1] if notion is ReducednessNotion.EFFECTIVE else list(range(i))
        for j in columns:
            z = complex(mu[i, j])
            worst = max(abs(z.real), abs(z.imag))
            if worst > 0.5 + slack:
                violations.append(ReducednessViolation("size", (i, j), worst, 0.5))

    if notion is ReducednessNotion.DEEP:
        for k in range(1, n):
            tails = _projected_tails(state, k)
            for i in range(k):
                rhs = delta * float(norms[i])
                if tails[i] < rhs - slack * float(norms[i]):
                    violations.append(
                        ReducednessViolation("deep", (i, k), float(tails[i]), rhs)
                    )
    else:
        for i in range(1, n):
            prev = float(norms[i - 1])
            lhs = float(norms[i]) + abs(complex(mu[i, i - 1])) ** 2 * prev
            if lhs < (delta - slack) * prev:
                violations.append(
                    ReducednessViolation("lovasz", (i - 1, i), lhs, delta * prev)
                )
    return violations


def is_lll_reduced(basis: npt.ArrayLike, delta: float) -> bool:
    """Size-reduced and Lovász conditions for every adjacent pair."""
    return not check_lll_conditions(basis, delta, ReducednessNotion.LLL)


def is_effectively_reduced(basis: npt.ArrayLike, delta: float) -> bool:
    """Adjacent size conditions and Lovász conditions."""
    return not check_lll_conditions(basis, delta, ReducednessNotion.EFFECTIVE)


def is_deep_reduced(basis: npt.ArrayLike, delta: float) -> bool:
    """Fully size-reduced and every deep-insertion test passes."""
    return not check_lll_conditions(basis, delta, ReducednessNotion.DEEP)


def is_size_reduced(basis: npt.ArrayLike, slack: float = CHECK_SLACK) -> bool:
    """Every coefficient mu_ij (j < i) has real and imaginary parts within 1/2."""
    state = gso(basis)
    mu = np.tril(state.mu, -1)
    worst = np.maximum(np.abs(mu.real), np.abs(mu.imag))
    return bool(np.all(worst <= 0.5 + slack))


def full_size_reduction(
    basis: npt.ArrayLike,
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Size-reduce every b_k against b_{k-1}, ..., b_0 without any swap.

    Returns:
        The size-reduced basis B @ U and the transform U

    Raises:
        SingularBasisError: If the basis is singular
    """
    b, state = _prepare(basis, keep_vectors=False)
    for k in range(1, state.n):
        for j in range(k - 1, -1, -1):
            size_reduce_pair(state, k, j)
    return b @ state.transform, state.transform.copy()
