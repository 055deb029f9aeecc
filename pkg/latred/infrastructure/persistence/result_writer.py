"""Writers for reduction reports and tabular campaign results."""

import csv
import io
import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from latred.core.domain import ReductionReport
from latred.infrastructure.persistence.matrix_repository import atomic_write_text
from latred.mimo.ber import BerConfig, BerResult

BER_COLUMNS = ("snr_db", "trials", "bit_errors", "ber", "variant", "budget", "detector")


def report_json(report: ReductionReport, indent: int = 2) -> str:
    return json.dumps(report.to_dict(), indent=indent)


def write_report(path: Path, report: ReductionReport, indent: int = 2) -> None:
    atomic_write_text(path, report_json(report, indent))


def csv_text(columns: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Render rows as CSV with a header line and ``\\n`` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def ber_rows(result: BerResult) -> list[list[object]]:
    config = result.config
    budget = "" if config.super_iteration_budget is None else config.super_iteration_budget
    return [
        [
            point.snr_db,
            point.trials,
            point.bit_errors,
            point.ber,
            config.reduction_variant,
            budget,
            config.detector.value,
        ]
        for point in result.points
    ]


def write_text(path: Path | None, text: str) -> str:
    """Write ``text`` to ``path`` (atomically) and return it unchanged."""
    if path is not None:
        atomic_write_text(path, text.rstrip("\n"))
    return text


def load_ber_config(
    path: Path,
    overrides: dict[str, Any] | None = None,
    defaults: dict[str, Any] | None = None,
) -> BerConfig:
    """Read a BER campaign configuration.

    ``defaults`` fill keys missing from the file; ``overrides`` replace keys.

    Raises:
        ValueError: If the file cannot be read or does not validate
    """
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"Cannot read BER config {path}: {e}") from e
    if not isinstance(data, dict):
        raise ValueError(f"BER config {path} must be a JSON object")
    merged = {**(defaults or {}), **data, **(overrides or {})}
    try:
        return BerConfig.model_validate(merged)
    except ValidationError as e:
        raise ValueError(f"Invalid BER config {path}: {e}") from e
