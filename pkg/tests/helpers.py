"""Shared helpers for the latred tests."""

import itertools
import json
import math
from pathlib import Path

import numpy as np
import numpy.typing as npt

from latred.core.linalg import gso
from latred.mimo.channel import ChannelModel, sample_basis

# Basis vectors b1 = (1, 0) and b2 = (1/2 + j/2, sqrt(2)/2) as columns.
COUNTEREXAMPLE_BASIS = np.array(
    [[1.0, 0.5 + 0.5j], [0.0, math.sqrt(2.0) / 2.0]], dtype=np.complex128
)

# The same entries read with the rows as basis vectors.
TRANSPOSED_COUNTEREXAMPLE = COUNTEREXAMPLE_BASIS.T.copy()


def random_basis(rng: np.random.Generator, n: int) -> np.ndarray:
    return sample_basis(ChannelModel(n), rng)


def in_lattice(
    original: npt.ArrayLike, vectors: npt.ArrayLike, atol: float = 1e-6
) -> bool:
    """Whether every column of ``vectors`` is an integer combination of ``original``."""
    coeffs = np.linalg.solve(np.asarray(original), np.asarray(vectors))
    return bool(
        np.allclose(coeffs.real, np.round(coeffs.real), atol=atol)
        and np.allclose(coeffs.imag, np.round(coeffs.imag), atol=atol)
    )


def brute_force_max_gs_norm(basis: np.ndarray) -> float:
    """Smallest possible max squared GS norm over all column orders."""
    n = basis.shape[1]
    return min(
        float(np.max(gso(basis[:, list(order)]).gs_norms_sq))
        for order in itertools.permutations(range(n))
    )


def brute_force_min_gs_norm(basis: np.ndarray) -> float:
    """Largest possible min squared GS norm over all column orders."""
    n = basis.shape[1]
    return max(
        float(np.min(gso(basis[:, list(order)]).gs_norms_sq))
        for order in itertools.permutations(range(n))
    )


def write_matrix(path: Path, matrix: npt.ArrayLike) -> Path:
    b = np.asarray(matrix, dtype=np.complex128)
    document = {
        "n": b.shape[1],
        "cols": [
            [{"re": float(z.real), "im": float(z.imag)} for z in b[:, j]]
            for j in range(b.shape[1])
        ],
    }
    path.write_text(json.dumps(document), encoding="utf-8")
    return path
