"""Complexity and quality metrics for lattice reduction.

Potential function, extreme Gram-Schmidt norms, average-case iteration and
flop bounds, basis quality bounds and an exact shortest-vector oracle for
small dimensions. Logarithms in the bounds are taken to base 1/delta.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from latred.core.domain import ApproxFactors, validate_delta
from latred.core.errors import InvalidDeltaError
from latred.core.linalg import GsoState, as_basis, gso


def potential(state: GsoState) -> float:
    """Log of the LLL potential, sum_i (n-1-i) log ||bhat_i||^2 (0-based i)."""
    n = state.n
    weights = np.arange(n - 1, -1, -1, dtype=np.float64)
    return float(np.sum(weights * np.log(state.gs_norms_sq)))


def extremes(state: GsoState) -> tuple[float, float]:
    """Return (A, a), the largest and smallest squared GS norm."""
    norms = state.gs_norms_sq
    return float(np.max(norms)), float(np.min(norms))


def _check_bound_args(n: int, delta: float) -> None:
    if n < 2:
        raise ValueError(f"Bounds need n >= 2, got {n}")
    if not 0.5 < delta < 1.0:
        raise InvalidDeltaError(
            f"Bounds need delta in (1/2, 1), got {delta}", delta=delta
        )


def _log_base(x: float, delta: float) -> float:
    return math.log(x) / math.log(1.0 / delta)


@dataclass(frozen=True)
class ComplexityBounds:
    """Average-case complexity envelopes for LLL on i.i.d. complex normal bases.

    Attributes:
        n: Dimension
        delta: Lovász parameter
        k_minus_bound: Bound on the mean number of failed Lovász tests
        k_total_bound: Bound on the mean number of Lovász tests
        flop_bound_c1: Flops of everything except non-adjacent size reduction
        flop_bound_c2: Flops of size reduction against non-adjacent vectors
        sr_cost_bound: Cost of one final full size reduction pass
        sr_per_iteration_bound: Size reduction cost per positive test
    """

    n: int
    delta: float
    k_minus_bound: float
    k_total_bound: float
    flop_bound_c1: float
    flop_bound_c2: float
    sr_cost_bound: float
    sr_per_iteration_bound: float


def k_minus_bound(n: int, delta: float) -> float:
    """Bound n(n-1)/2 (log 2n + 1) on the mean number of swaps."""
    _check_bound_args(n, delta)
    return n * (n - 1) / 2 * (_log_base(2 * n, delta) + 1)


def iteration_bound(n: int, delta: float) -> float:
    """Bound n(n-1)(log 2n + 1) + n on the mean number of Lovász tests.

    Raises:
        InvalidDeltaError: If delta is not in (1/2, 1)
    """
    _check_bound_args(n, delta)
    return n * (n - 1) * (_log_base(2 * n, delta) + 1) + n


def flop_bounds(n: int, delta: float) -> ComplexityBounds:
    """Evaluate every complexity envelope for dimension n.

    Raises:
        InvalidDeltaError: If delta is not in (1/2, 1)
    """
    _check_bound_args(n, delta)
    log2n = _log_base(2 * n, delta)
    n3 = float(n**3)
    return ComplexityBounds(
        n=n,
        delta=delta,
        k_minus_bound=k_minus_bound(n, delta),
        k_total_bound=iteration_bound(n, delta),
        flop_bound_c1=7 * n3 * log2n + 2 * n3,
        flop_bound_c2=3 * n * n * (n * (n - 1) / 2 * log2n + (n - 1)),
        sr_cost_bound=4.0 / 3.0 * n * (n - 1) * (n - 2),
        sr_per_iteration_bound=3.0 * n * n,
    )


@dataclass(frozen=True)
class QualityRecord:
    """Length measurements of a basis against the reduced-basis bounds.

    Attributes:
        n: Dimension
        delta: Lovász parameter the bounds are evaluated for
        b1_norm: Length of the first basis vector
        prod_norms: Product of all basis vector lengths
        abs_det: |det B|
        det_root: |det B|^(1/n)
        b1_det_bound: alpha^((n-1)/4) det^(1/n)
        prod_bound: alpha^(n(n-1)/4) |det B|
        b1_lambda_factor: alpha^((n-1)/2), to be multiplied by lambda_1
        parallel_b1_bound: c^((n-1)/4) / sqrt(delta) det^(1/n)
    """

    n: int
    delta: float
    b1_norm: float
    prod_norms: float
    abs_det: float
    det_root: float
    b1_det_bound: float
    prod_bound: float
    b1_lambda_factor: float
    parallel_b1_bound: float

    def satisfies_lll_bounds(
        self, lambda1: float | None = None, rtol: float = 1e-9
    ) -> bool:
        """Check the reduced-basis length bounds (the lambda_1 one if given)."""
        slack = 1.0 + rtol
        ok = (
            self.b1_norm <= self.b1_det_bound * slack
            and self.prod_norms <= self.prod_bound * slack
        )
        if lambda1 is not None:
            ok = ok and self.b1_norm <= self.b1_lambda_factor * lambda1 * slack
        return ok

    def satisfies_parallel_bound(self, rtol: float = 1e-9) -> bool:
        return self.b1_norm <= self.parallel_b1_bound * (1.0 + rtol)


def basis_quality(basis: npt.ArrayLike, delta: float = 0.75) -> QualityRecord:
    """Measure a basis against the bounds for the given delta.

    Raises:
        SingularBasisError: If the basis is singular
    """
    validate_delta(delta)
    state = gso(basis)
    n = state.n
    factors = ApproxFactors.from_delta(delta)
    col_norms = np.linalg.norm(state.basis, axis=0)
    log_abs_det = 0.5 * float(np.sum(np.log(state.gs_norms_sq)))
    det_root = math.exp(log_abs_det / n)
    return QualityRecord(
        n=n,
        delta=delta,
        b1_norm=float(col_norms[0]),
        prod_norms=float(math.exp(np.sum(np.log(col_norms)))),
        abs_det=math.exp(log_abs_det),
        det_root=det_root,
        b1_det_bound=factors.alpha ** ((n - 1) / 4) * det_root,
        prod_bound=factors.alpha ** (n * (n - 1) / 4) * math.exp(log_abs_det),
        b1_lambda_factor=factors.alpha ** ((n - 1) / 2),
        parallel_b1_bound=factors.c_complex ** ((n - 1) / 4)
        / math.sqrt(delta)
        * det_root,
    )


def shortest_vector_length(basis: npt.ArrayLike) -> float:
    """Exact length of a shortest nonzero lattice vector.

    Enumerates Gaussian-integer coefficient vectors level by level inside the
    ball whose radius is the shortest basis vector. Exponential in n; meant
    for n <= 4 after reduction.
    """
    b = as_basis(basis)
    state = gso(b)
    n = state.n
    mu = state.mu
    norms = state.gs_norms_sq
    best = float(np.min(np.sum(np.abs(b) ** 2, axis=0)))
    coeffs = [0j] * n

    def search(level: int, partial: float) -> None:
        nonlocal best
        center = -sum(mu[j, level] * coeffs[j] for j in range(level + 1, n))
        rho_sq = (best - partial) / norms[level] + 1e-12
        if rho_sq < 0:
            return
        rho = math.sqrt(rho_sq)
        for re in range(math.ceil(center.real - rho), math.floor(center.real + rho) + 1):
            rem = rho_sq - (re - center.real) ** 2
            if rem < 0:
                continue
            w = math.sqrt(rem)
            for im in range(
                math.ceil(center.imag - w), math.floor(center.imag + w) + 1
            ):
                x = complex(re, im)
                total = partial + abs(x - center) ** 2 * norms[level]
                if total > best * (1 + 1e-12):
                    continue
                coeffs[level] = x
                if level > 0:
                    search(level - 1, total)
                elif any(coeffs) and total < best:
                    best = total
        coeffs[level] = 0j

    search(n - 1, 0.0)
    return math.sqrt(best)
