"""Tests for the JSON matrix repository."""

import json
from pathlib import Path

import numpy as np
import pytest

from latred.core.errors import MatrixFormatError
from latred.infrastructure.persistence import MatrixDocument, MatrixRepository


class TestMatrixDocument:
    """Test the matrix document model."""

    def test_columns_are_basis_vectors(self) -> None:
        """Test that cols[j] becomes column j."""
        document = MatrixDocument.model_validate(
            {
                "n": 2,
                "cols": [
                    [{"re": 1, "im": 0}, {"re": 2, "im": -1}],
                    [{"re": 0, "im": 3}, {"re": 4}],
                ],
            }
        )
        np.testing.assert_array_equal(document.to_array(), [[1, 3j], [2 - 1j, 4]])

    def test_from_array(self) -> None:
        """Test the column-major layout of a written document."""
        document = MatrixDocument.from_array(np.array([[1, 2j], [3, 4]]))
        assert document.n == 2
        assert document.cols[1][0].im == 2.0
        assert document.cols[0][1].re == 3.0

    def test_rejects_non_square(self) -> None:
        """Test that arrays must be square."""
        with pytest.raises(MatrixFormatError):
            MatrixDocument.from_array(np.ones((2, 3)))


class TestMatrixRepository:
    """Test reading and writing matrix files."""

    def test_save_and_load(self, tmp_path: Path, rng: np.random.Generator) -> None:
        """Test that a saved basis loads back unchanged."""
        matrix = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        path = tmp_path / "out" / "basis.json"
        repository = MatrixRepository()

        repository.save(path, matrix)

        np.testing.assert_array_equal(repository.load(path), matrix)
        assert not path.with_suffix(".json.tmp").exists()

    def test_indent(self, tmp_path: Path) -> None:
        """Test the configured JSON indentation."""
        text = MatrixRepository(indent=4).dumps(np.eye(1))
        assert json.loads(text) == {"n": 1, "cols": [[{"re": 1.0, "im": 0.0}]]}
        assert '\n    "n"' in text

    @pytest.mark.parametrize(
        "content",
        [
            "not json",
            '{"n": 2, "cols": [[{"re": 1}]]}',
            '{"n": 1, "cols": [[{"re": 1, "phase": 0}]]}',
            '{"n": 1, "cols": [[{"re": NaN}]]}',
            '{"n": 0, "cols": []}',
        ],
    )
    def test_rejects_malformed(self, tmp_path: Path, content: str) -> None:
        """Test malformed, non-square, unknown-key and non-finite documents."""
        path = tmp_path / "bad.json"
        path.write_text(content)
        with pytest.raises(MatrixFormatError):
            MatrixRepository().load(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that an unreadable file is a format error."""
        with pytest.raises(MatrixFormatError, match="Cannot read"):
            MatrixRepository().load(tmp_path / "missing.json")
