"""Rendering of command rows as CSV (17 significant digits) or JSON."""
import csv
import io
import json
import math
from pathlib import Path
from typing import Any, List, Optional

from sldcorr.commands.base import Row
from sldcorr.schemas.run_schema import OutputFormat


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def render_csv(rows: List[Row]) -> str:
    if not rows:
        return ""
    columns = list(rows[0].keys())
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_value(row.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(rows: List[Row]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def render(rows: List[Row], fmt: OutputFormat) -> str:
    return render_json(rows) if fmt is OutputFormat.JSON else render_csv(rows)


def write_rows(rows: List[Row], fmt: OutputFormat, out: Optional[Path], stream) -> None:
    """Writes the rendered table to `out`, or to `stream` when no path is given."""
    text = render(rows, fmt)
    if out is None:
        stream.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
