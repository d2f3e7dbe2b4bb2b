"""CSV and JSON writers for scan results."""
import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from cge.schemas.results import ScanRow

logger = logging.getLogger(__name__)


def format_number(value: Optional[float], digits: int = 9) -> str:
    """Fixed scientific notation with ``digits`` significant digits; empty for missing values."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return f"{value:.{digits - 1}e}"


def row_record(row: ScanRow, columns: Sequence[str], index: str = "a") -> Dict[str, Any]:
    """Flat mapping of a row in column order (index, values, *_err, flags, error)."""
    record: Dict[str, Any] = {index: row.a}
    for column in columns:
        if column.endswith("_err"):
            record[column] = row.errors.get(column[: -len("_err")])
        elif column in row.flags:
            record[column] = row.flags[column]
        else:
            record[column] = row.values.get(column)
    record["error"] = row.error or ""
    return record


def render_csv(rows: Sequence[ScanRow], columns: Sequence[str], digits: int = 9, index: str = "a") -> str:
    """
    Render rows as CSV with a fixed column order.

    Args:
        rows: scan rows in grid order
        columns: value columns after ``a`` (``*_err`` names select error columns)
        digits: significant digits of every number
        index: header of the first column
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([index, *columns, "error"])
    for row in rows:
        record = row_record(row, columns, index)
        cells = []
        for key in [index, *columns]:
            value = record[key]
            if isinstance(value, bool):
                cells.append("1" if value else "0")
            else:
                cells.append(format_number(value, digits))
        cells.append(record["error"])
        writer.writerow(cells)
    return buffer.getvalue()


def render_json(rows: Sequence[ScanRow], columns: Sequence[str], metadata: Dict[str, Any], index: str = "a") -> str:
    """Render ``{"metadata": ..., "rows": [...]}`` with NaN written as null."""
    records: List[Dict[str, Any]] = []
    for row in rows:
        record = row_record(row, columns, index)
        records.append({
            k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in record.items()
        })
    return json.dumps({"metadata": metadata, "rows": records}, indent=2, sort_keys=False)


def write_table(
    rows: Sequence[ScanRow],
    columns: Sequence[str],
    metadata: Dict[str, Any],
    path: Optional[str] = None,
    fmt: str = "csv",
    digits: int = 9,
    index: str = "a",
) -> str:
    """
    Render and write a result table.

    Args:
        rows: scan rows
        columns: value columns
        metadata: run metadata (JSON only)
        path: output file; None writes nothing and only returns the text
        fmt: "csv" or "json"
        digits: significant digits for CSV
        index: name of the first column

    Returns:
        The rendered text
    """
    if fmt == "json":
        text = render_json(rows, columns, metadata, index)
    else:
        text = render_csv(rows, columns, digits, index)
    if path:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("Wrote %d rows to %s", len(rows), path)
    return text


def write_trace(path: str, traces: Sequence[Dict[str, Any]], digits: int = 9) -> None:
    """Per-term Matsubara traces as CSV (a, quantity, l, term)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["a", "quantity", "l", "term"])
    for entry in traces:
        for l, term in entry["terms"]:
            writer.writerow([format_number(entry["a"], digits), entry["quantity"], l, format_number(term, digits)])
    Path(path).write_text(buffer.getvalue(), encoding="utf-8")
