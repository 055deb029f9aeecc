"""Square QAM constellations on the odd-integer Gaussian grid.

Lattice decoding works on coordinates x with real and imaginary parts in
``[-m/2, m/2 - 1]`` (m = sqrt(M)); the transmitted grid point is
``2x + (1 + j)`` and the unit-energy symbol is ``scale * (2x + (1 + j))``.
Bits are Gray-labelled per real dimension.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from latred.core.domain import ComplexMatrix
from latred.core.errors import UnsupportedOrderError

SUPPORTED_ORDERS = (4, 16, 64)

IntArray = npt.NDArray[np.int64]


@dataclass(frozen=True)
class QamConstellation:
    """Square M-QAM.

    Attributes:
        order: Number of points M
        side: Points per real dimension, sqrt(M)
        bits_per_symbol: log2(M)
        scale: Factor taking the odd grid to unit average energy
    """

    order: int
    side: int
    bits_per_symbol: int
    scale: float

    @property
    def bits_per_dimension(self) -> int:
        return self.bits_per_symbol // 2

    @property
    def low(self) -> int:
        """Smallest lattice coordinate per real dimension."""
        return -self.side // 2

    @property
    def high(self) -> int:
        """Largest lattice coordinate per real dimension."""
        return self.side // 2 - 1

    @property
    def grid_energy(self) -> float:
        """Average energy of the unnormalized odd grid, 2(M - 1)/3."""
        return 2.0 * (self.order - 1) / 3.0

    def points(self) -> ComplexMatrix:
        """All unnormalized grid points, real level major."""
        levels = 2 * np.arange(self.side) - (self.side - 1)
        re, im = np.meshgrid(levels, levels, indexing="ij")
        return (re + 1j * im).ravel().astype(np.complex128)

    def symbols(self) -> ComplexMatrix:
        """Unit-energy constellation points."""
        return self.scale * self.points()

    def coordinates(self) -> ComplexMatrix:
        """All lattice coordinates x, in the order of :meth:`points`."""
        return (self.points() - (1 + 1j)) / 2

    def index_to_coordinate(self, re_level: IntArray, im_level: IntArray) -> ComplexMatrix:
        """Lattice coordinates from per-dimension level indices 0..m-1."""
        offset = self.side // 2
        return ((re_level - offset) + 1j * (im_level - offset)).astype(np.complex128)

    def coordinate_to_levels(self, x: npt.ArrayLike) -> tuple[IntArray, IntArray]:
        """Per-dimension level indices of (already clipped) lattice coordinates."""
        z = np.asarray(x, dtype=np.complex128)
        offset = self.side // 2
        re = np.rint(z.real).astype(np.int64) + offset
        im = np.rint(z.imag).astype(np.int64) + offset
        return re, im

    def clip(self, x: npt.ArrayLike) -> ComplexMatrix:
        """Clip real and imaginary parts to the constellation box."""
        z = np.asarray(x, dtype=np.complex128)
        re = np.clip(z.real, self.low, self.high)
        im = np.clip(z.imag, self.low, self.high)
        return (re + 1j * im).astype(np.complex128)

    def modulate(self, x: npt.ArrayLike) -> ComplexMatrix:
        """Unit-energy symbols of lattice coordinates."""
        z = np.asarray(x, dtype=np.complex128)
        return (self.scale * (2 * z + (1 + 1j))).astype(np.complex128)

    def gray_labels(self, x: npt.ArrayLike) -> tuple[IntArray, IntArray]:
        """Gray labels of the real and imaginary levels."""
        re, im = self.coordinate_to_levels(self.clip(x))
        return re ^ (re >> 1), im ^ (im >> 1)

    def bit_errors(self, sent: npt.ArrayLike, detected: npt.ArrayLike) -> int:
        """Number of differing Gray-labelled bits between two coordinate vectors."""
        sent_re, sent_im = self.gray_labels(sent)
        det_re, det_im = self.gray_labels(detected)
        diff = np.concatenate([sent_re ^ det_re, sent_im ^ det_im])
        return int(sum(int(v).bit_count() for v in diff))


def qam_symbols(order: int) -> QamConstellation:
    """Square QAM constellation of the given order.

    Raises:
        UnsupportedOrderError: If the order is not 4, 16 or 64
    """
    if order not in SUPPORTED_ORDERS:
        raise UnsupportedOrderError(
            f"QAM order must be one of {SUPPORTED_ORDERS}, got {order}"
        )
    side = math.isqrt(order)
    return QamConstellation(
        order=order,
        side=side,
        bits_per_symbol=int(math.log2(order)),
        scale=1.0 / math.sqrt(2.0 * (order - 1) / 3.0),
    )
