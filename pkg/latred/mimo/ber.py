"""Bit error rate campaigns for lattice-reduction-aided detection.

Every (SNR point, trial) pair draws channel, symbols and noise, in that
order, from its own generator seeded by (seed, snr_index, trial). Results
are therefore identical whether SNR points run sequentially or in a
process pool.

SNR is the average received energy per receive antenna over the noise
variance per complex dimension. With unit-energy symbols and the
i.i.d. channel model that gives ``sigma^2 = 2n / SNR``.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from itertools import repeat

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from latred.core.domain import (
    ComplexMatrix,
    ReductionParams,
    ReductionVariant,
    SortMode,
    validate_delta,
)
from latred.core.reduction import full_size_reduction, is_size_reduced
from latred.core.services.reducer import LatticeReducer
from latred.mimo.channel import ChannelModel, sample_basis, trial_rng
from latred.mimo.constellation import SUPPORTED_ORDERS, QamConstellation, qam_symbols
from latred.mimo.detection import detect_ml, detect_sic, detect_zf, lattice_problem

logger = logging.getLogger(__name__)

NO_REDUCTION = "none"


class DetectorKind(str, Enum):
    """Detection algorithm run after reduction."""

    ZF = "zf"
    SIC = "sic"
    ML = "ml"


class BerConfig(BaseModel):
    """One BER campaign.

    ``reduction_variant`` is a reduction variant name or ``"none"`` for
    detection on the unreduced channel.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(ge=1)
    qam_order: int = 16
    snr_grid: list[float] = Field(min_length=1)
    trials: int = Field(ge=1)
    reduction_variant: str = ReductionVariant.STANDARD.value
    super_iteration_budget: int | None = Field(default=None, ge=1)
    detector: DetectorKind = DetectorKind.SIC
    mmse_extension: bool = False
    delta: float = 0.75
    hybrid_parallel_iters: int = Field(default=2, ge=0)
    sort_mode: SortMode = SortMode.QR
    seed: int
    workers: int = Field(default=1, ge=1)

    @field_validator("qam_order")
    @classmethod
    def _check_order(cls, value: int) -> int:
        if value not in SUPPORTED_ORDERS:
            raise ValueError(f"qam_order must be one of {SUPPORTED_ORDERS}")
        return value

    @field_validator("reduction_variant")
    @classmethod
    def _check_variant(cls, value: str) -> str:
        allowed = {v.value for v in ReductionVariant} | {NO_REDUCTION}
        if value not in allowed:
            raise ValueError(f"reduction_variant must be one of {sorted(allowed)}")
        return value

    @field_validator("delta")
    @classmethod
    def _check_delta(cls, value: float) -> float:
        return validate_delta(value)


class BerPoint(BaseModel):
    """Error counts at one SNR point."""

    snr_db: float
    trials: int
    bits: int
    bit_errors: int
    symbol_errors: int
    ber: float = Field(ge=0.0, le=1.0)
    std_error: float


class BerResult(BaseModel):
    """BER curve of one campaign together with its configuration."""

    config: BerConfig
    points: list[BerPoint]

    @property
    def ber(self) -> list[float]:
        return [p.ber for p in self.points]


def noise_variance(n: int, snr_db: float) -> float:
    """Noise variance per complex dimension for unit-energy symbols."""
    if math.isinf(snr_db) and snr_db > 0:
        return 0.0
    return 2.0 * n / 10.0 ** (snr_db / 10.0)


def standard_error(errors: int, bits: int) -> float:
    """Binomial standard error of an error-rate estimate."""
    if bits <= 0:
        return 0.0
    p = errors / bits
    return math.sqrt(p * (1.0 - p) / bits)


def build_reducer(config: BerConfig) -> LatticeReducer | None:
    if config.reduction_variant == NO_REDUCTION:
        return None
    variant = ReductionVariant(config.reduction_variant)
    return LatticeReducer(
        variant,
        ReductionParams(delta=config.delta, variant=variant),
        budget=config.super_iteration_budget,
        hybrid_parallel_iters=config.hybrid_parallel_iters,
        sort_mode=config.sort_mode,
    )


def detect(
    config: BerConfig,
    constellation: QamConstellation,
    reducer: LatticeReducer | None,
    channel: ComplexMatrix,
    received: ComplexMatrix,
    noise_var: float,
) -> ComplexMatrix:
    """Detected lattice coordinates for one received vector."""
    if config.detector is DetectorKind.ML:
        plain = lattice_problem(channel, received, constellation)
        return detect_ml(plain.basis, plain.target, constellation)

    problem = lattice_problem(
        channel,
        received,
        constellation,
        noise_var if config.mmse_extension else None,
    )
    if reducer is None:
        reduced = problem.basis
        transform = np.eye(problem.n, dtype=np.complex128)
    else:
        reduced, report = reducer.reduce(problem.basis)
        assert report.transform is not None
        transform = report.transform

    if config.detector is DetectorKind.SIC:
        return detect_sic(reduced, transform, problem.target, constellation)
    if reducer is not None and not is_size_reduced(reduced):
        reduced, extra = full_size_reduction(reduced)
        transform = transform @ extra
    return detect_zf(
        reduced,
        transform,
        problem.target,
        constellation,
        require_size_reduced=reducer is not None,
    )


def simulate_point(config: BerConfig, snr_index: int) -> BerPoint:
    """Run every trial of one SNR point."""
    constellation = qam_symbols(config.qam_order)
    reducer = build_reducer(config)
    model = ChannelModel(config.n)
    snr_db = config.snr_grid[snr_index]
    noise_var = noise_variance(config.n, snr_db)
    noise_std = math.sqrt(noise_var / 2.0)
    bit_errors = 0
    symbol_errors = 0

    for trial in range(config.trials):
        rng = trial_rng(config.seed, snr_index, trial)
        channel = sample_basis(model, rng)
        levels = rng.integers(0, constellation.side, size=(2, config.n))
        sent = constellation.index_to_coordinate(levels[0], levels[1])
        noise = noise_std * (
            rng.standard_normal(config.n) + 1j * rng.standard_normal(config.n)
        )
        received = channel @ constellation.modulate(sent) + noise
        detected = detect(config, constellation, reducer, channel, received, noise_var)
        bit_errors += constellation.bit_errors(sent, detected)
        symbol_errors += int(np.count_nonzero(sent != detected))

    bits = config.trials * config.n * constellation.bits_per_symbol
    ber = bit_errors / bits
    logger.info(
        f"SNR {snr_db:g} dB: {bit_errors}/{bits} bit errors "
        f"({config.reduction_variant}, {config.detector.value})"
    )
    return BerPoint(
        snr_db=snr_db,
        trials=config.trials,
        bits=bits,
        bit_errors=bit_errors,
        symbol_errors=symbol_errors,
        ber=ber,
        std_error=standard_error(bit_errors, bits),
    )


def run_ber(config: BerConfig) -> BerResult:
    """Simulate every SNR point of a campaign.

    With ``workers > 1`` the SNR points run in a process pool; the result
    is identical to a sequential run.
    """
    indices = range(len(config.snr_grid))
    if config.workers > 1 and len(config.snr_grid) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            points = list(pool.map(simulate_point, repeat(config), indices))
    else:
        points = [simulate_point(config, i) for i in indices]
    return BerResult(config=config, points=points)
