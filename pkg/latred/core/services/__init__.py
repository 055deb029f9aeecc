"""Core services built on the reduction kernels.

This package contains the variant dispatcher and the benchmark campaigns.
"""

from latred.core.services.benchmark import (
    BenchRow,
    CompareRow,
    run_bench,
    run_compare,
)
from latred.core.services.reducer import LatticeReducer

__all__ = ["BenchRow", "CompareRow", "LatticeReducer", "run_bench", "run_compare"]
