"""CSV / JSON report writers and run manifests.

All report files share one JSON envelope (see docs/report-schema.md)::

    {"schema": "mts1.report/1", "command": ..., "params": {...},
     "columns": [...], "rows": [{...}], "summary": {...}}
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path

from . import __version__

SCHEMA = "mts1.report/1"
MANIFEST_SCHEMA = "mts1.manifest/1"


def clean(value):
    """Round floats to 6 decimals so tables, CSV and JSON show the same numbers."""
    if isinstance(value, float):
        return round(value, 6)
    if isinstance(value, dict):
        return {k: clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    return value


def cell(value) -> str:
    return "" if value is None else str(value)


def render_table(columns: list[str], rows: list[dict]) -> str:
    cells = [[cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines)


def to_csv(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([cell(r.get(c)) for c in columns])
    return buf.getvalue()


def report_doc(command: str, params: dict, columns: list[str], rows: list[dict], summary=None) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "columns": columns,
        "rows": rows,
        "summary": summary or {},
    }


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def file_entry(path: Path) -> dict:
    data = Path(path).read_bytes()
    return {"path": str(path), "bytes": len(data), "sha256": hashlib.sha256(data).hexdigest()}


def write_manifest(path: Path, command: str, params: dict, seed, argv: list[str], outputs: list[Path]) -> Path:
    doc = {
        "schema": MANIFEST_SCHEMA,
        "command": command,
        "params": params,
        "seed": seed,
        "tool_version": __version__,
        "argv": argv,
        "outputs": [file_entry(p) for p in outputs],
    }
    Path(path).write_text(dump_json(doc), encoding="utf-8")
    return Path(path)
