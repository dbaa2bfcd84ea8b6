"""
Output renderers
Every command hands over one document (for json) and one table (for csv
and plain); all of it goes to standard output
"""

import csv
import enum
import io
import json
from typing import Any, Iterable, List, Optional, Sequence

from pydantic import BaseModel

from zetakit.models import OutputFormat


def _jsonable(document: Any) -> Any:
    if isinstance(document, BaseModel):
        return document.model_dump(mode="json")
    if isinstance(document, (list, tuple)):
        return [_jsonable(item) for item in document]
    if isinstance(document, dict):
        return {key: _jsonable(value) for key, value in document.items()}
    return document


def cell(value: Any) -> str:
    """Shortest round-trip text for floats, plain str otherwise"""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, enum.Enum):
        return str(value.value)
    return str(value)


def render(
    fmt: OutputFormat,
    document: Any,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    title: Optional[str] = None,
) -> str:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return json.dumps(_jsonable(document), allow_nan=False) + "\n"

    table: List[List[str]] = [[cell(v) for v in row] for row in rows]
    if fmt is OutputFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(table)
        return buf.getvalue()

    widths = [len(h) for h in header]
    for row in table:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = [title] if title else []
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    lines.extend("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table)
    return "\n".join(lines) + "\n"


def emit(
    fmt: OutputFormat,
    document: Any,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    title: Optional[str] = None,
) -> None:
    print(render(fmt, document, header, rows, title), end="")
