"""Persistence layer for latred.

This package contains the matrix JSON repository and the writers for
reports and campaign results.
"""

from latred.infrastructure.persistence.matrix_repository import (
    MatrixDocument,
    MatrixRepository,
)
from latred.infrastructure.persistence.result_writer import (
    csv_text,
    load_ber_config,
    write_report,
)

__all__ = [
    "MatrixDocument",
    "MatrixRepository",
    "csv_text",
    "load_ber_config",
    "write_report",
]
