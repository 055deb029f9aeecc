"""Random channel matrices.

Entries are i.i.d. complex normal with standard normal real and imaginary
parts, so E||bhat_i||^2 = 2(n - i) for 0-based i.
"""

from dataclasses import dataclass

import numpy as np

from latred.core.domain import ComplexMatrix


@dataclass(frozen=True)
class ChannelModel:
    """Square i.i.d. complex normal channel of dimension n."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Channel dimension must be positive, got {self.n}")


def sample_basis(model: ChannelModel, rng: np.random.Generator) -> ComplexMatrix:
    """Draw one n x n channel matrix from ``rng``."""
    shape = (model.n, model.n)
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)
    return (real + 1j * imag).astype(np.complex128)


def trial_rng(seed: int, snr_index: int, trial: int) -> np.random.Generator:
    """Independent generator for one (SNR point, trial) work item."""
    return np.random.default_rng([seed, snr_index, trial])
