"""
Output emitters: JSON, CSV and aligned text tables
"""
import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import mpmath

FORMATS = ("json", "csv", "table")


def plain(value, as_float: bool = False):
    """
    JSON-ready copy of a report value. Fractions become "p/q" strings unless
    as_float is set; partitions and irreps use their string forms.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        if as_float:
            return float(value)
        return str(value)
    if isinstance(value, mpmath.mpf):
        return float(value)
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(plain(k)): plain(v, as_float) for k, v in value.items()}
    if isinstance(value, tuple) and type(value) is not tuple:
        # Partition and other tuple subclasses
        return str(value)
    if isinstance(value, (list, tuple)):
        return [plain(v, as_float) for v in value]
    if hasattr(value, "to_json"):
        return plain(value.to_json(), as_float)
    return str(value)


def _float_strings(value):
    """Turn "p/q" strings from to_json() back into floats for --float output"""
    if isinstance(value, str) and "/" in value:
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError):
            return value
    if isinstance(value, dict):
        return {k: _float_strings(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_float_strings(v) for v in value]
    return value


def emit_json(data, as_float: bool = False) -> str:
    data = plain(data, as_float)
    if as_float:
        data = _float_strings(data)
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _columns(rows) -> list:
    columns = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def emit_csv(rows, as_float: bool = False) -> str:
    rows = [plain(row, as_float) for row in rows]
    if as_float:
        rows = _float_strings(rows)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=_columns(rows), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def emit_table(rows, as_float: bool = False) -> str:
    rows = [plain(row, as_float) for row in rows]
    if as_float:
        rows = _float_strings(rows)
    columns = _columns(rows)
    if not columns:
        return ""
    cells = [[str(column) for column in columns]]
    cells += [["" if row.get(column) is None else str(row.get(column)) for column in columns] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip() for line in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def render(data, fmt: str, rows=None, as_float: bool = False) -> str:
    """JSON renders the whole report; csv and table render its rows"""
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format {fmt!r} (choose from {', '.join(FORMATS)})")
    if fmt == "json":
        return emit_json(data, as_float)
    rows = rows if rows is not None else (data if isinstance(data, list) else [data])
    if fmt == "csv":
        return emit_csv(rows, as_float)
    return emit_table(rows, as_float)


def write_csv(path, rows, as_float: bool = True):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(emit_csv(rows, as_float))
