"""Lattice-reduction-aided detection.

A received vector ``y = H s + w`` with QAM symbols ``s`` is turned into a
square lattice decoding problem ``target ~ basis @ x`` over Gaussian
integer coordinates ``x`` (see :mod:`latred.mimo.constellation`). The
detectors decode in the infinite lattice spanned by a reduced basis, map
the result back through the unimodular transform and clip it to the
constellation box.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.linalg import solve_triangular

from latred.core.domain import ComplexMatrix
from latred.core.errors import (
    DimensionMismatchError,
    NotFullyReducedError,
    SearchTooLargeError,
)
from latred.core.linalg import cholesky, gram, gso, round_gaussian, round_gaussian_array
from latred.core.reduction import is_size_reduced
from latred.mimo.constellation import QamConstellation

ML_CANDIDATE_LIMIT = 10**7

_ML_CHUNK = 1 << 16


@dataclass(frozen=True)
class DecodingProblem:
    """Find Gaussian-integer x with ``basis @ x`` closest to ``target``."""

    basis: ComplexMatrix
    target: ComplexMatrix

    @property
    def n(self) -> int:
        return int(self.basis.shape[1])


def _check_square(basis: ComplexMatrix, target: ComplexMatrix) -> None:
    if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
        raise DimensionMismatchError(f"Basis must be square, got shape {basis.shape}")
    if target.shape != (basis.shape[0],):
        raise DimensionMismatchError(
            f"Target of shape {target.shape} does not match basis {basis.shape}"
        )


def lattice_problem(
    channel: npt.ArrayLike,
    received: npt.ArrayLike,
    constellation: QamConstellation,
    noise_var: float | None = None,
) -> DecodingProblem:
    """Build the decoding problem for one received vector.

    Without ``noise_var`` the basis is ``scale * H`` and the target the
    shifted received vector. With ``noise_var`` the MMSE extension is used:
    the augmented basis ``[scale * H; rho I]`` and target ``[y'; rho c]``
    (``c`` the centre of the constellation box, ``rho = sigma * scale``)
    are replaced by their square equivalent ``R`` with ``R^H R = A^H A``.

    Raises:
        DimensionMismatchError: If the shapes do not agree
        NotPositiveDefiniteError: If the channel is singular without noise
    """
    h = np.asarray(channel, dtype=np.complex128)
    y = np.asarray(received, dtype=np.complex128)
    _check_square(h, y)
    n = h.shape[1]
    basis = constellation.scale * h
    shifted = (y - basis @ np.full(n, 1 + 1j)) / 2
    if noise_var is None:
        return DecodingProblem(basis=basis, target=shifted)
    if noise_var < 0:
        raise ValueError(f"noise_var must be non-negative, got {noise_var}")

    rho = math.sqrt(noise_var) * constellation.scale
    centre = np.full(n, -(1 + 1j) / 2)
    augmented = np.vstack([basis, rho * np.eye(n)])
    augmented_target = np.concatenate([shifted, rho * centre])
    r = cholesky(gram(augmented))
    target = solve_triangular(
        r, augmented.conj().T @ augmented_target, trans="C", lower=False
    )
    return DecodingProblem(basis=r, target=np.asarray(target, dtype=np.complex128))


def nearest_plane(basis: npt.ArrayLike, target: npt.ArrayLike) -> ComplexMatrix:
    """Babai nearest-plane (SIC) coefficients, last coordinate first.

    Raises:
        DimensionMismatchError: If the shapes do not agree
        SingularBasisError: If the basis is singular
    """
    b = np.asarray(basis, dtype=np.complex128)
    t = np.asarray(target, dtype=np.complex128)
    _check_square(b, t)
    state = gso(b)
    assert state.gs_vectors is not None
    g = state.gs_vectors
    residual = t.copy()
    z = np.zeros(b.shape[1], dtype=np.complex128)
    for i in range(b.shape[1] - 1, -1, -1):
        coeff = np.vdot(g[:, i], residual) / state.gs_norms_sq[i]
        z[i] = round_gaussian(complex(coeff))
        residual -= z[i] * b[:, i]
    return z


def babai_rounding(basis: npt.ArrayLike, target: npt.ArrayLike) -> ComplexMatrix:
    """Babai rounding (ZF) coefficients, ``round(B^-1 t)``.

    Raises:
        DimensionMismatchError: If the shapes do not agree
    """
    b = np.asarray(basis, dtype=np.complex128)
    t = np.asarray(target, dtype=np.complex128)
    _check_square(b, t)
    return round_gaussian_array(np.linalg.solve(b, t))


def _map_back(
    transform: npt.ArrayLike,
    z: ComplexMatrix,
    constellation: QamConstellation | None,
) -> ComplexMatrix:
    u = np.asarray(transform, dtype=np.complex128)
    if u.shape != (z.shape[0], z.shape[0]):
        raise DimensionMismatchError(
            f"Transform of shape {u.shape} does not match dimension {z.shape[0]}"
        )
    x = round_gaussian_array(u @ z)
    return x if constellation is None else constellation.clip(x)


def detect_sic(
    reduced_basis: npt.ArrayLike,
    transform: npt.ArrayLike,
    target: npt.ArrayLike,
    constellation: QamConstellation | None = None,
) -> ComplexMatrix:
    """SIC detection on a reduced basis.

    Returns:
        Lattice coordinates ``U z`` in the original basis, clipped to the
        constellation box when one is given

    Raises:
        DimensionMismatchError: If the shapes do not agree
    """
    z = nearest_plane(reduced_basis, target)
    return _map_back(transform, z, constellation)


def detect_zf(
    reduced_basis: npt.ArrayLike,
    transform: npt.ArrayLike,
    target: npt.ArrayLike,
    constellation: QamConstellation | None = None,
    require_size_reduced: bool = True,
) -> ComplexMatrix:
    """Zero-forcing detection on a reduced basis.

    Raises:
        NotFullyReducedError: If the basis is not fully size-reduced and
            ``require_size_reduced`` is set
        DimensionMismatchError: If the shapes do not agree
    """
    if require_size_reduced and not is_size_reduced(reduced_basis):
        raise NotFullyReducedError("Zero-forcing needs a fully size-reduced basis")
    z = babai_rounding(reduced_basis, target)
    return _map_back(transform, z, constellation)


def detect_ml(
    basis: npt.ArrayLike,
    target: npt.ArrayLike,
    constellation: QamConstellation,
    max_candidates: int = ML_CANDIDATE_LIMIT,
) -> ComplexMatrix:
    """Exhaustive maximum-likelihood search over the finite constellation.

    Ties go to the first candidate in enumeration order.

    Raises:
        SearchTooLargeError: If M^n exceeds ``max_candidates``
        DimensionMismatchError: If the shapes do not agree
    """
    b = np.asarray(basis, dtype=np.complex128)
    t = np.asarray(target, dtype=np.complex128)
    _check_square(b, t)
    n = b.shape[1]
    total = constellation.order**n
    if total > max_candidates:
        raise SearchTooLargeError(
            f"ML search over {total} candidates exceeds the limit {max_candidates}",
            candidates=total,
        )
    coords = constellation.coordinates()
    shape = (constellation.order,) * n
    best_cost = math.inf
    best = np.zeros(n, dtype=np.complex128)
    for start in range(0, total, _ML_CHUNK):
        flat = np.arange(start, min(start + _ML_CHUNK, total))
        candidates = coords[np.array(np.unravel_index(flat, shape))]
        costs = np.sum(np.abs(t[:, None] - b @ candidates) ** 2, axis=0)
        idx = int(np.argmin(costs))
        if costs[idx] < best_cost:
            best_cost = float(costs[idx])
            best = candidates[:, idx].copy()
    return best
