"""Real/complex conversions, dual bases and reducedness transfer.

A complex basis of dimension n corresponds to a real basis of dimension 2n.
Two layouts are provided: the local one expands every entry into a 2x2
block, the block one stacks real and imaginary parts. Real matrices are
returned with complex dtype and zero imaginary parts so the complex
algorithms apply to them unchanged.
"""

import numpy as np
import numpy.typing as npt

from latred.core.domain import ApproxFactors, ComplexMatrix
from latred.core.errors import PreconditionFailedError
from latred.core.linalg import as_basis, gso
from latred.core.reduction import is_lll_reduced

__all__ = [
    "ApproxFactors",
    "check_reducedness_transfer",
    "dual_basis",
    "gso_structure_deviation",
    "realify_block",
    "realify_local",
]


def realify_local(matrix: npt.ArrayLike) -> ComplexMatrix:
    """Expand each entry b into [[Re b, -Im b], [Im b, Re b]]."""
    z = np.asarray(matrix, dtype=np.complex128)
    rows, cols = z.shape
    out = np.zeros((2 * rows, 2 * cols), dtype=np.float64)
    out[0::2, 0::2] = z.real
    out[0::2, 1::2] = -z.imag
    out[1::2, 0::2] = z.imag
    out[1::2, 1::2] = z.real
    return out.astype(np.complex128)


def realify_block(matrix: npt.ArrayLike) -> ComplexMatrix:
    """Return [[Re B, -Im B], [Im B, Re B]]."""
    z = np.asarray(matrix, dtype=np.complex128)
    out = np.block([[z.real, -z.imag], [z.imag, z.real]])
    return out.astype(np.complex128)


def dual_basis(basis: npt.ArrayLike) -> ComplexMatrix:
    """Dual basis (B^-1)^H J, with J reversing the column order.

    Raises:
        SingularBasisError: If the basis is singular
    """
    b = as_basis(basis)
    gso(b)
    inverse = np.linalg.inv(b)
    return np.ascontiguousarray(inverse.conj().T[:, ::-1])


def check_reducedness_transfer(basis: npt.ArrayLike, delta: float) -> bool:
    """Whether a complex LLL-reduced basis stays reduced as a real basis.

    The local realification of a basis that is complex LLL-reduced with
    parameter delta is real LLL-reduced with parameter delta - 1/4.

    Raises:
        PreconditionFailedError: If the basis is not complex LLL-reduced
    """
    if not is_lll_reduced(basis, delta):
        raise PreconditionFailedError(
            f"Basis is not LLL-reduced for delta={delta}"
        )
    return is_lll_reduced(realify_local(basis), delta - 0.25)


def gso_structure_deviation(basis: npt.ArrayLike) -> float:
    """Largest Frobenius deviation between the GSO of the local realification
    and the realified complex GSO.

    The real coefficients equal the realified conjugate coefficients because
    of the ``mu[i, j] = <bhat_j, b_i> / ||bhat_j||^2`` convention.
    """
    complex_state = gso(basis)
    real_state = gso(realify_local(basis))
    assert complex_state.gs_vectors is not None
    assert real_state.gs_vectors is not None
    mu_dev = np.linalg.norm(real_state.mu - realify_local(complex_state.mu.conj()))
    vec_dev = np.linalg.norm(
        real_state.gs_vectors - realify_local(complex_state.gs_vectors)
    )
    return float(max(mu_dev, vec_dev))
