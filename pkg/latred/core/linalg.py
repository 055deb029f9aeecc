"""Complex dense linear algebra for lattice bases.

Gram matrices, (modified) Gram-Schmidt orthogonalization, QR and Cholesky
factors, Gaussian-integer rounding and exact determinants of Gaussian
integer matrices.

Conventions: columns of a basis matrix are the basis vectors, and the GSO
coefficients are ``mu[i, j] = <bhat_j, b_i> / ||bhat_j||^2`` with
``<u, v> = u^H v``, so that ``B = Bhat @ mu.T``.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from latred.core.domain import ComplexMatrix, GaussianInteger, Permutation, RealVector
from latred.core.errors import (
    DimensionMismatchError,
    MatrixFormatError,
    NotPositiveDefiniteError,
    SingularBasisError,
)

SINGULARITY_RTOL = 1e-12


@dataclass
class FlopCounter:
    """Semantic flop counter passed into factorization routines."""

    count: int = 0

    def add(self, flops: int) -> None:
        self.count += flops


@dataclass
class GsoState:
    """Gram-Schmidt data of a basis, updated in place by the reduction algorithms.

    Attributes:
        basis: Current basis B (columns are basis vectors)
        mu: Lower-triangular coefficients with unit diagonal
        gs_norms_sq: Squared norms of the Gram-Schmidt vectors
        transform: Accumulated unimodular transform U (B = B_original @ U)
        gs_vectors: Gram-Schmidt vectors Bhat, when maintained
        flops: Semantic flop count of all operations applied so far
    """

    basis: ComplexMatrix
    mu: ComplexMatrix
    gs_norms_sq: RealVector
    transform: ComplexMatrix
    gs_vectors: ComplexMatrix | None = None
    flops: int = 0
    tolerance: float = field(default=0.0, repr=False)

    @property
    def n(self) -> int:
        return int(self.basis.shape[1])

    def copy(self) -> "GsoState":
        return GsoState(
            basis=self.basis.copy(),
            mu=self.mu.copy(),
            gs_norms_sq=self.gs_norms_sq.copy(),
            transform=self.transform.copy(),
            gs_vectors=None if self.gs_vectors is None else self.gs_vectors.copy(),
            flops=self.flops,
            tolerance=self.tolerance,
        )

    def reconstruct(self) -> ComplexMatrix:
        """Return Bhat @ mu.T, which equals the basis when gs_vectors are kept."""
        if self.gs_vectors is None:
            raise ValueError("Gram-Schmidt vectors are not maintained in this state")
        return self.gs_vectors @ self.mu.T


def as_basis(matrix: npt.ArrayLike) -> ComplexMatrix:
    """Validate a square, finite basis and return it as a complex128 copy.

    Raises:
        DimensionMismatchError: If the matrix is not square
        MatrixFormatError: If an entry is NaN or infinite
    """
    b = np.array(matrix, dtype=np.complex128, copy=True)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise DimensionMismatchError(f"Basis must be square, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise MatrixFormatError("Basis contains non-finite entries")
    return b


def singularity_tolerance(basis: ComplexMatrix) -> float:
    """Absolute threshold below which a squared GS norm counts as zero."""
    if basis.size == 0:
        return 0.0
    col_norms = np.sum(np.abs(basis) ** 2, axis=0)
    return SINGULARITY_RTOL * float(np.max(col_norms))


def gram(basis: npt.ArrayLike, counter: FlopCounter | None = None) -> ComplexMatrix:
    """Return A = B^H B, Hermitian by construction.

    Only the n(n+1)/2 entries on and below the diagonal are charged to
    ``counter``, n flops each.
    """
    b = np.asarray(basis, dtype=np.complex128)
    if counter is not None:
        n = b.shape[1]
        counter.add(n * n * (n + 1) // 2)
    a = b.conj().T @ b
    lower = np.tril(a, -1)
    return lower + lower.conj().T + np.diag(np.real(np.diag(a)).astype(np.complex128))


def orthogonalize_tail(
    v: ComplexMatrix,
    mu: ComplexMatrix,
    norms: RealVector,
    start: int,
    tolerance: float,
) -> int:
    """Run modified Gram-Schmidt on columns ``start:`` of ``v`` in place.

    Columns before ``start`` must already hold Gram-Schmidt vectors with their
    squared norms in ``norms``. Rows ``start:`` of ``mu`` are recomputed.

    Returns:
        Flops spent

    Raises:
        SingularBasisError: If a squared GS norm falls below the tolerance
    """
    rows, n = v.shape
    flops = 0
    for t in range(n):
        if t >= start:
            norms[t] = float(np.real(np.vdot(v[:, t], v[:, t])))
            flops += rows
            if norms[t] <= tolerance:
                raise SingularBasisError(
                    f"Gram-Schmidt vector {t} vanishes (norm^2={norms[t]:.3e})",
                    index=t,
                )
        lo = max(t + 1, start)
        if lo >= n:
            continue
        coeffs = (v[:, t].conj() @ v[:, lo:]) / norms[t]
        mu[lo:, t] = coeffs
        v[:, lo:] -= np.outer(v[:, t], coeffs)
        flops += 2 * rows * (n - lo)
    return flops


def gso(basis: npt.ArrayLike) -> GsoState:
    """Gram-Schmidt orthogonalization of a square nonsingular basis.

    Raises:
        SingularBasisError: If the basis is numerically singular
    """
    b = as_basis(basis)
    n = b.shape[1]
    v = b.copy()
    mu = np.eye(n, dtype=np.complex128)
    norms = np.zeros(n, dtype=np.float64)
    tolerance = singularity_tolerance(b)
    flops = orthogonalize_tail(v, mu, norms, 0, tolerance)
    return GsoState(
        basis=b,
        mu=mu,
        gs_norms_sq=norms,
        transform=np.eye(n, dtype=np.complex128),
        gs_vectors=v,
        flops=flops,
        tolerance=tolerance,
    )


def r_factor(state: GsoState) -> ComplexMatrix:
    """Upper-triangular R with r_ii = ||bhat_i|| and r_ij = mu_ji * r_ii."""
    r_diag = np.sqrt(state.gs_norms_sq)
    r = state.mu.T * r_diag[:, None]
    return np.triu(r).astype(np.complex128)


def pivoted_cholesky(
    matrix: npt.ArrayLike,
    pivot: bool,
    counter: FlopCounter | None = None,
    rtol: float = 0.0,
) -> tuple[Permutation, ComplexMatrix]:
    """Cholesky factorization with optional minimum-diagonal pivoting.

    At step i the pivot is the smallest entry of the updated diagonal
    ``c[i:, i:]``, followed by a symmetric row/column exchange. Entries
    within ``rtol`` of the minimum count as ties; ties go to the lowest
    original index.

    Returns:
        Permutation and upper-triangular R with R^H R = P^T A P

    Raises:
        NotPositiveDefiniteError: If a pivot is not above the tolerance
    """
    c = np.array(matrix, dtype=np.complex128, copy=True)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise DimensionMismatchError(f"Matrix must be square, got shape {c.shape}")
    n = c.shape[0]
    order = list(range(n))
    tolerance = SINGULARITY_RTOL * float(np.max(np.real(np.diag(c)))) if n else 0.0
    flops = 0
    for i in range(n):
        if pivot and i < n - 1:
            diag = np.real(np.diag(c))[i:]
            limit = float(np.min(diag)) * (1.0 + rtol)
            k = i + min(
                (m for m in range(n - i) if diag[m] <= limit),
                key=lambda m: order[i + m],
            )
            if k != i:
                c[[i, k], :] = c[[k, i], :]
                c[:, [i, k]] = c[:, [k, i]]
                order[i], order[k] = order[k], order[i]
        pivot_value = float(np.real(c[i, i]))
        if pivot_value <= tolerance:
            raise NotPositiveDefiniteError(
                f"Cholesky pivot {i} is not positive ({pivot_value:.3e})", index=i
            )
        d = math.sqrt(pivot_value)
        c[i, i] = d
        c[i + 1 :, i] /= d
        tail = c[i + 1 :, i]
        c[i + 1 :, i + 1 :] -= np.outer(tail, tail.conj())
        m = n - i - 1
        flops += 1 + m + m * (m + 1) // 2
    if counter is not None:
        counter.add(flops)
    lower = np.tril(c)
    return Permutation(tuple(order)), lower.conj().T


def cholesky(matrix: npt.ArrayLike, counter: FlopCounter | None = None) -> ComplexMatrix:
    """Upper-triangular R with positive real diagonal and R^H R = A.

    Raises:
        NotPositiveDefiniteError: If A is not (numerically) positive definite
    """
    _, r = pivoted_cholesky(matrix, pivot=False, counter=counter)
    return r


def _round_half_away(x: float) -> float:
    ax = abs(x)
    f = math.floor(ax)
    r = f + 1 if ax - f >= 0.5 else f
    return math.copysign(r, x) if r else 0.0


def round_gaussian(z: complex) -> GaussianInteger:
    """Nearest Gaussian integer, parts rounded separately, ties away from zero."""
    return complex(_round_half_away(z.real), _round_half_away(z.imag))


def round_gaussian_array(values: npt.ArrayLike) -> ComplexMatrix:
    """Element-wise :func:`round_gaussian` over an array."""
    z = np.asarray(values, dtype=np.complex128)

    def _round(x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        ax = np.abs(x)
        f = np.floor(ax)
        r = f + (ax - f >= 0.5)
        return np.copysign(r, x) + 0.0

    return (_round(z.real) + 1j * _round(z.imag)).astype(np.complex128)


def _gaussian_entries(matrix: npt.ArrayLike) -> list[list[tuple[int, int]]]:
    u = np.asarray(matrix, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatchError(f"Matrix must be square, got shape {u.shape}")
    if not np.array_equal(u, round_gaussian_array(u)):
        raise ValueError("Matrix has entries that are not Gaussian integers")
    return [[(int(z.real), int(z.imag)) for z in row] for row in u]


def _gmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdiv_exact(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    num = _gmul(a, (b[0], -b[1]))
    den = b[0] * b[0] + b[1] * b[1]
    re, re_rem = divmod(num[0], den)
    im, im_rem = divmod(num[1], den)
    if re_rem or im_rem:
        raise ArithmeticError("Inexact Gaussian-integer division")
    return (re, im)


def gaussian_determinant(matrix: npt.ArrayLike) -> tuple[int, int]:
    """Exact determinant of a Gaussian-integer matrix as a (re, im) pair.

    Uses fraction-free Bareiss elimination on Python integers.
    """
    m = _gaussian_entries(matrix)
    n = len(m)
    if n == 0:
        return (1, 0)
    sign = 1
    prev = (1, 0)
    for k in range(n - 1):
        if m[k][k] == (0, 0):
            swap = next((r for r in range(k + 1, n) if m[r][k] != (0, 0)), None)
            if swap is None:
                return (0, 0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a = _gmul(m[i][j], m[k][k])
                b = _gmul(m[i][k], m[k][j])
                m[i][j] = _gdiv_exact((a[0] - b[0], a[1] - b[1]), prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return (sign * d[0], sign * d[1])


def is_unimodular(matrix: npt.ArrayLike) -> bool:
    """True if the matrix has Gaussian-integer entries and |det| = 1."""
    try:
        re, im = gaussian_determinant(matrix)
    except ValueError:
        return False
    return re * re + im * im == 1
