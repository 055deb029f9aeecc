"""JSON storage of complex basis matrices.

A matrix document is ``{"n": n, "cols": [[{"re": .., "im": ..}, ...], ...]}``
with one inner list per basis vector (column).
"""

import json
from pathlib import Path

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from latred.core.domain import ComplexMatrix
from latred.core.errors import MatrixFormatError


class ComplexEntry(BaseModel):
    """One matrix entry."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    re: float
    im: float = 0.0


class MatrixDocument(BaseModel):
    """Square complex matrix stored column by column."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    n: int
    cols: list[list[ComplexEntry]]

    @model_validator(mode="after")
    def _check_square(self) -> "MatrixDocument":
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if len(self.cols) != self.n or any(len(c) != self.n for c in self.cols):
            raise ValueError(f"cols must hold {self.n} columns of {self.n} entries")
        return self

    def to_array(self) -> ComplexMatrix:
        columns = [[complex(e.re, e.im) for e in col] for col in self.cols]
        return np.array(columns, dtype=np.complex128).T

    @classmethod
    def from_array(cls, matrix: npt.ArrayLike) -> "MatrixDocument":
        b = np.asarray(matrix, dtype=np.complex128)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise MatrixFormatError(f"Matrix must be square, got shape {b.shape}")
        return cls(
            n=b.shape[1],
            cols=[
                [ComplexEntry(re=float(z.real), im=float(z.imag)) for z in b[:, j]]
                for j in range(b.shape[1])
            ],
        )


class MatrixRepository:
    """Reads and writes matrix documents.

    Attributes:
        indent: JSON indentation of written documents
    """

    def __init__(self, indent: int = 2) -> None:
        self.indent = indent

    def load(self, path: Path) -> ComplexMatrix:
        """Read a matrix document.

        Raises:
            MatrixFormatError: If the file is unreadable, malformed, not
                square or holds non-finite entries
        """
        try:
            text = path.read_text(encoding="utf-8")
            document = MatrixDocument.model_validate_json(text)
        except OSError as e:
            raise MatrixFormatError(f"Cannot read matrix file {path}: {e}") from e
        except ValidationError as e:
            raise MatrixFormatError(f"Invalid matrix document {path}: {e}") from e
        return document.to_array()

    def save(self, path: Path, matrix: npt.ArrayLike) -> None:
        """Write a matrix document atomically.

        Raises:
            MatrixFormatError: If the matrix is not square
        """
        document = MatrixDocument.from_array(matrix)
        atomic_write_text(path, json.dumps(document.model_dump(), indent=self.indent))

    def dumps(self, matrix: npt.ArrayLike) -> str:
        document = MatrixDocument.from_array(matrix)
        return json.dumps(document.model_dump(), indent=self.indent)


def atomic_write_text(path: Path, text: str) -> None:
    """Write through a temporary file and move it into place."""
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_file = path.with_suffix(path.suffix + ".tmp")
    try:
        temp_file.write_text(text + "\n", encoding="utf-8")
        temp_file.replace(path)
    except OSError:
        if temp_file.exists():
            temp_file.unlink()
        raise
