"""Canonical report emission.

Reports must be byte-identical across runs, so JSON is emitted by a
small fixed-format writer instead of ``json.dumps``: keys keep insertion
order, floats are always printed with six decimal places (ties round to
even), and the file ends with a newline.  CSV uses the same float rule.
"""

from __future__ import annotations

import json
import math

SCHEMA_VERSION = "1"


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    return format(x, ".6f")


def dumps(obj, indent: int = 2) -> str:
    """Serialize dict/list/str/int/float/bool/None with fixed formatting."""
    pieces: list[str] = []
    _emit(obj, pieces, 0, indent)
    pieces.append("\n")
    return "".join(pieces)


def _emit(obj, out: list[str], level: int, indent: int) -> None:
    pad = " " * (indent * (level + 1))
    end_pad = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, val) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(key))}: ")
            _emit(val, out, level + 1, indent)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            out.append("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        out.append("[\n")
        for i, val in enumerate(obj):
            out.append(pad)
            _emit(val, out, level + 1, indent)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end_pad + "]")
    else:
        out.append(_scalar(obj))


def _scalar(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def csv_lines(header: list[str], rows: list[list]) -> str:
    out = [",".join(header)]
    for row in rows:
        out.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(out) + "\n"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format_float(v)
    return str(v)
