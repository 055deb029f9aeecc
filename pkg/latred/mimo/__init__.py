"""MIMO detection harness for latred.

This package provides the random channel model, QAM signalling, lattice
decoding detectors and BER campaigns used to exercise the reduction
algorithms.
"""

from latred.mimo.ber import BerConfig, BerPoint, BerResult, DetectorKind, run_ber
from latred.mimo.channel import ChannelModel, sample_basis, trial_rng
from latred.mimo.constellation import QamConstellation, qam_symbols
from latred.mimo.detection import (
    DecodingProblem,
    detect_ml,
    detect_sic,
    detect_zf,
    lattice_problem,
)

__all__ = [
    "BerConfig",
    "BerPoint",
    "BerResult",
    "ChannelModel",
    "DecodingProblem",
    "DetectorKind",
    "QamConstellation",
    "detect_ml",
    "detect_sic",
    "detect_zf",
    "lattice_problem",
    "qam_symbols",
    "run_ber",
    "sample_basis",
    "trial_rng",
]
