"""Canonical JSONL corpus files: one record object per line, schema key order."""

from __future__ import annotations

import json
from pathlib import Path

from .baselines import encode_jsonl, record_from_dict
from .errors import MTSError
from .model import TelemetrySeries


class CorpusError(MTSError, ValueError):
    pass


def write_corpus(series: TelemetrySeries, path: str | Path) -> int:
    data = encode_jsonl(series)
    Path(path).write_bytes(data)
    return len(data)


def parse_corpus(text: str, source: str = "<corpus>") -> TelemetrySeries:
    host = None
    records = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            record = record_from_dict(obj)
            line_host = obj["host"]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CorpusError(f"{source}:{lineno}: {exc}") from exc
        if host is None:
            host = line_host
        elif line_host != host:
            raise CorpusError(f"{source}:{lineno}: host {line_host!r} differs from {host!r}")
        records.append(record)
    if not records:
        raise CorpusError(f"{source}: no records")
    try:
        return TelemetrySeries(host, records)
    except ValueError as exc:
        raise CorpusError(f"{source}: {exc}") from exc


def read_corpus(path: str | Path) -> TelemetrySeries:
    path = Path(path)
    return parse_corpus(path.read_text(encoding="utf-8"), str(path))
