"""Machine-readable tables emitted by the CLI, with lossless round-tripping.

CSV layout: ``# key=<json>`` metadata lines, one mandatory header row, then
data rows. Floats are written with ``repr`` (shortest string that round-trips
to the same double, at most 17 significant digits); empty cells mean ``None``;
rationals travel as ``"num/den"`` strings. JSON is a single object holding the
metadata keys next to ``columns`` and ``rows``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

_RESERVED = ("columns", "rows")


@dataclass
class Table:
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> List[Any]:
        return [r[name] for r in self.rows]


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_cell(s: str) -> Any:
    if s == "":
        return None
    if s in ("true", "false"):
        return s == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    for k, v in table.meta.items():
        buf.write(f"# {k}={json.dumps(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([_cell(r[c]) for c in table.columns])
    return buf.getvalue()


def from_csv(text: str) -> Table:
    meta: Dict[str, Any] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            k, _, v = line[2:].partition("=")
            meta[k] = json.loads(v)
        elif line:
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)
    rows = [dict(zip(columns, map(_parse_cell, rec))) for rec in reader]
    return Table(columns, rows, meta)


def to_json(table: Table) -> str:
    clash = [k for k in table.meta if k in _RESERVED]
    if clash:
        raise ValueError(f"metadata keys {clash} are reserved")
    obj = dict(table.meta)
    obj["columns"] = table.columns
    obj["rows"] = [{c: r[c] for c in table.columns} for r in table.rows]
    return json.dumps(obj, indent=1) + "\n"


def from_json(text: str) -> Table:
    obj = json.loads(text)
    columns = obj.pop("columns")
    rows = obj.pop("rows")
    return Table(columns, rows, obj)


def emit(table: Table, fmt: str) -> str:
    return to_json(table) if fmt == "json" else to_csv(table)


def parse(text: str, fmt: str) -> Table:
    return from_json(text) if fmt == "json" else from_csv(text)
