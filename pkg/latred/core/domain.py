"""Core domain models for latred.

This module defines the data structures shared by the reduction, parallel
and metrics modules: reduction parameters and reports, column permutations,
super-iteration budgets and reducedness diagnostics.

Matrices are NumPy ``complex128`` arrays whose columns are basis vectors.
Column indices in the API are 0-based.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, TypeAlias

import numpy as np
import numpy.typing as npt

from latred.core.errors import InvalidDeltaError

ComplexMatrix: TypeAlias = npt.NDArray[np.complex128]
RealVector: TypeAlias = npt.NDArray[np.float64]
GaussianInteger: TypeAlias = complex

DEFAULT_DELTA = 0.75


class ReductionVariant(Enum):
    """Reduction algorithm selected for a run."""

    STANDARD = "lll"
    EFFECTIVE = "effective"
    DEEP = "deep"
    PARALLEL_EFFECTIVE = "parallel-effective"
    PARALLEL_DEEP = "parallel-deep"
    HYBRID = "hybrid"

    @property
    def is_deep(self) -> bool:
        """Whether the variant performs deep insertions."""
        return self in (
            ReductionVariant.DEEP,
            ReductionVariant.PARALLEL_DEEP,
            ReductionVariant.HYBRID,
        )


class ReducednessNotion(Enum):
    """Reduction notion a basis can be checked against."""

    LLL = "lll"
    EFFECTIVE = "effective"
    DEEP = "deep"


class SortMode(Enum):
    """Sorting step used by each round of parallel LLL-deep.

    QR runs sorted Gram-Schmidt after a separate full size reduction, JOINT
    size-reduces inside the sorted Gram-Schmidt, and CHOLESKY factors the
    Gram matrix with minimum-diagonal pivoting instead of orthogonalizing.
    All three give the same converged basis.
    """

    QR = "qr"
    JOINT = "joint"
    CHOLESKY = "cholesky"


def validate_delta(delta: float, lower: float = 0.5) -> float:
    """Check that ``lower < delta <= 1`` and return delta.

    Raises:
        InvalidDeltaError: If delta is outside the admissible range
    """
    if not math.isfinite(delta) or not lower < delta <= 1.0:
        raise InvalidDeltaError(
            f"delta must lie in ({lower}, 1], got {delta}", delta=delta
        )
    return delta


@dataclass
class ReductionParams:
    """Parameters shared by all reduction algorithms.

    Attributes:
        delta: Lovász parameter in (1/2, 1]
        max_iterations: Iteration cap (None selects the default cap for n)
        variant: Algorithm the parameters are intended for
        lovasz_slack: Relative slack on the Lovász test during reduction
    """

    delta: float = DEFAULT_DELTA
    max_iterations: int | None = None
    variant: ReductionVariant = ReductionVariant.STANDARD
    lovasz_slack: float = 1e-12

    def __post_init__(self) -> None:
        validate_delta(self.delta)
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError(
                f"max_iterations must be positive, got {self.max_iterations}"
            )

    def iteration_cap(self, n: int, deep: bool = False) -> int:
        """Return the effective iteration cap for an n-dimensional basis.

        The default cap is ceil(100 n^2 log2(n+1)), ten times larger for
        deep-insertion runs.
        """
        if self.max_iterations is not None:
            return self.max_iterations
        cap = math.ceil(100 * n * n * math.log2(n + 1))
        return 10 * cap if deep or self.variant.is_deep else cap


@dataclass
class SuperIterationBudget:
    """Fixed number of super-iterations granted to a parallel algorithm.

    Attributes:
        max_super_iterations: Upper bound on the number of sweeps
        converged_early: Set by the algorithm when a sweep changed nothing
    """

    max_super_iterations: int
    converged_early: bool = False

    def __post_init__(self) -> None:
        if self.max_super_iterations < 1:
            raise ValueError(
                "max_super_iterations must be at least 1, "
                f"got {self.max_super_iterations}"
            )

    @classmethod
    def for_parallel_effective(cls, n: int) -> "SuperIterationBudget":
        """Default budget of ceil(n log2(n+1)) sweeps."""
        return cls(max(1, math.ceil(n * math.log2(n + 1))))

    @classmethod
    def for_parallel_deep(cls, n: int) -> "SuperIterationBudget":
        """Default budget of n sort-and-reduce rounds."""
        return cls(max(1, n))


@dataclass(frozen=True)
class Permutation:
    """Column permutation; position ``i`` receives original column ``mapping[i]``."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"Not a bijection on 0..n-1: {self.mapping}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def size(self) -> int:
        return len(self.mapping)

    def is_identity(self) -> bool:
        return all(i == m for i, m in enumerate(self.mapping))

    def moved(self) -> int:
        """Number of positions that do not hold their original column."""
        return sum(1 for i, m in enumerate(self.mapping) if i != m)

    def apply(self, matrix: ComplexMatrix) -> ComplexMatrix:
        """Return the matrix with its columns permuted."""
        return matrix[:, list(self.mapping)]

    def then(self, other: "Permutation") -> "Permutation":
        """Permutation equivalent to applying ``self`` and then ``other``."""
        return Permutation(tuple(self.mapping[j] for j in other.mapping))

    def as_matrix(self) -> ComplexMatrix:
        """Permutation matrix P with ``B @ P == self.apply(B)``."""
        p = np.zeros((self.size, self.size), dtype=np.complex128)
        for position, original in enumerate(self.mapping):
            p[original, position] = 1.0
        return p


@dataclass(frozen=True)
class ReducednessViolation:
    """A single failed reduction condition.

    Attributes:
        condition: Name of the failed condition ("size", "lovasz", "deep")
        indices: 0-based indices the condition was evaluated at
        lhs: Left-hand side of the failed inequality
        rhs: Right-hand side of the failed inequality
    """

    condition: str
    indices: tuple[int, ...]
    lhs: float
    rhs: float

    def describe(self) -> str:
        where = ",".join(str(i) for i in self.indices)
        return f"{self.condition}[{where}]: {self.lhs:.6g} vs {self.rhs:.6g}"


@dataclass
class ReductionReport:
    """Counters and traces collected during one reduction run.

    Attributes:
        variant: Algorithm that produced the report
        n: Dimension of the basis
        delta: Lovász parameter used
        iterations: Number of Lovász (or deep-insertion) tests K
        negative_tests: Failed tests K-
        positive_tests: Passed tests K+
        swaps: Adjacent swaps performed
        insertions: Deep insertions (or reordered columns in parallel LLL-deep)
        flops: Semantic flop count of the whole run
        full_size_reduction_flops: Part of ``flops`` spent on size reduction
            against non-adjacent vectors
        potential_trace: Log-potential at the start and after every swap,
            insertion or super-iteration
        extremes_trace: (max, min) squared GS norm at the same points
        transform: Unimodular transform U with output = input @ U
        super_iterations: Completed sweeps of a parallel algorithm
        converged_early: Whether a parallel algorithm stopped before its budget
        label: Free-form tag attached to the run
        wall_time: Seconds spent in the run
    """

    variant: ReductionVariant
    n: int
    delta: float
    iterations: int = 0
    negative_tests: int = 0
    positive_tests: int = 0
    swaps: int = 0
    insertions: int = 0
    flops: int = 0
    full_size_reduction_flops: int = 0
    potential_trace: list[float] = field(default_factory=list)
    extremes_trace: list[tuple[float, float]] = field(default_factory=list)
    transform: ComplexMatrix | None = None
    super_iterations: int = 0
    converged_early: bool | None = None
    label: str | None = None
    wall_time: float = 0.0

    def record_test(self, passed: bool) -> None:
        """Count one Lovász or deep-insertion test."""
        self.iterations += 1
        if passed:
            self.positive_tests += 1
        else:
            self.negative_tests += 1

    def record_trace(self, log_potential: float, extremes: tuple[float, float]) -> None:
        self.potential_trace.append(log_potential)
        self.extremes_trace.append(extremes)

    @property
    def flops_c1(self) -> int:
        """Flops excluding size reduction against non-adjacent vectors."""
        return self.flops - self.full_size_reduction_flops

    def absorb(self, other: "ReductionReport") -> None:
        """Add the counters and traces of a follow-up run to this report."""
        self.iterations += other.iterations
        self.negative_tests += other.negative_tests
        self.positive_tests += other.positive_tests
        self.swaps += other.swaps
        self.insertions += other.insertions
        self.flops += other.flops
        self.full_size_reduction_flops += other.full_size_reduction_flops
        self.potential_trace.extend(other.potential_trace)
        self.extremes_trace.extend(other.extremes_trace)
        self.super_iterations += other.super_iterations
        self.wall_time += other.wall_time
        if self.transform is None:
            self.transform = other.transform
        elif other.transform is not None:
            self.transform = self.transform @ other.transform

    def to_dict(self) -> dict[str, Any]:
        """Serializable view; the transform becomes [re, im] integer pairs per column."""
        transform: list[list[list[int]]] | None = None
        if self.transform is not None:
            transform = [
                [[int(round(z.real)), int(round(z.imag))] for z in column]
                for column in self.transform.T
            ]
        return {
            "variant": self.variant.value,
            "n": self.n,
            "delta": self.delta,
            "iterations": self.iterations,
            "negative_tests": self.negative_tests,
            "positive_tests": self.positive_tests,
            "swaps": self.swaps,
            "insertions": self.insertions,
            "flops": self.flops,
            "full_size_reduction_flops": self.full_size_reduction_flops,
            "potential_trace": list(self.potential_trace),
            "extremes_trace": [list(pair) for pair in self.extremes_trace],
            "transform": transform,
            "super_iterations": self.super_iterations,
            "converged_early": self.converged_early,
            "label": self.label,
        }


@dataclass(frozen=True)
class ApproxFactors:
    """Approximation constants derived from the Lovász parameter.

    Attributes:
        delta: Lovász parameter in (1/2, 1]
        alpha: 1 / (delta - 1/2), complex LLL factor
        beta: 1 / (delta - 1/4), real LLL factor
        c_complex: 1 / (delta^2 (delta - 1/2)), parallel effective LLL (complex)
        c_real: 1 / (delta^2 (delta - 1/4)), parallel effective LLL (real)
    """

    delta: float
    alpha: float
    beta: float
    c_complex: float
    c_real: float

    @classmethod
    def from_delta(cls, delta: float) -> "ApproxFactors":
        validate_delta(delta)
        return cls(
            delta=delta,
            alpha=1.0 / (delta - 0.5),
            beta=1.0 / (delta - 0.25),
            c_complex=1.0 / (delta * delta * (delta - 0.5)),
            c_real=1.0 / (delta * delta * (delta - 0.25)),
        )

    def alpha_dominates_beta_squared(self, rtol: float = 1e-12) -> bool:
        """Whether alpha >= beta^2 (equality only at delta = 3/4)."""
        return self.alpha >= self.beta**2 * (1.0 - rtol)

    def first_vector_factors(self, n: int) -> tuple[float, float]:
        """Length factors on ||b_1|| / det^(1/n) for the complex lattice and for
        its 2n-dimensional real counterpart reduced with delta - 1/4.

        Both are measured against the same root determinant, since the real
        lattice has dimension 2n and determinant |det B|^2.
        """
        return self.alpha ** ((n - 1) / 4), self.beta ** ((2 * n - 1) / 4)
