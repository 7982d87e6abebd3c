"""Reference encoders for the size benchmark.

Every text/map format carries the same ten keys per record, in schema order,
so all six encodings hold identical information.
"""

from __future__ import annotations

import enum
import json
import struct

import cbor2
import msgpack

from .codec import SnapshotPolicy, decode_stream, encode_stream
from .errors import EmptySeries, EncodingFailure, UnknownFormat
from .model import FIELDS, FLOAT_FIELDS, TelemetryRecord, TelemetrySeries, ThresholdConfig

RECORD_KEYS = FIELDS + ("host",)


class FormatId(str, enum.Enum):
    JSON = "json"
    JSONL = "jsonl"
    CBOR = "cbor"
    MSGPACK = "msgpack"
    MTS1 = "mts1"
    MTS1_LZ4 = "mts1+lz4"

    @classmethod
    def parse(cls, name: str) -> "FormatId":
        try:
            return cls(name.strip().lower())
        except ValueError:
            known = ", ".join(f.value for f in cls)
            raise UnknownFormat(f"unknown format {name!r} (known: {known})") from None


def record_dict(record: TelemetryRecord, host: str) -> dict:
    out = {name: getattr(record, name) for name in FIELDS}
    out["host"] = host
    return out


def record_from_dict(obj: dict) -> TelemetryRecord:
    values = []
    for name in FIELDS:
        value = obj[name]
        if name in FLOAT_FIELDS:
            values.append(float(value))
        elif isinstance(value, int) and not isinstance(value, bool):
            values.append(value)
        else:
            raise TypeError(f"{name} must be an integer, got {value!r}")
    return TelemetryRecord(*values)


def json_record(record: TelemetryRecord, host: str) -> str:
    return json.dumps(record_dict(record, host), separators=(",", ":"), ensure_ascii=False, allow_nan=False)


def encode_json(series: TelemetrySeries) -> bytes:
    host = series.host_id
    return ("[" + ",".join(json_record(r, host) for r in series.records) + "]").encode("utf-8")


def encode_jsonl(series: TelemetrySeries) -> bytes:
    host = series.host_id
    return "".join(json_record(r, host) + "\n" for r in series.records).encode("utf-8")


_PACK = msgpack.Packer()
_PACK_F32 = msgpack.Packer(use_single_float=True)


def _msgpack_value(value) -> bytes:
    # smallest lossless float: f32 when the value survives the round trip
    if isinstance(value, float) and struct.unpack("<f", struct.pack("<f", value))[0] == value:
        return _PACK_F32.pack(value)
    return _PACK.pack(value)


def encode_msgpack(series: TelemetrySeries) -> bytes:
    out = bytearray(_PACK.pack_array_header(len(series.records)))
    host = _PACK.pack(series.host_id)
    keys = [_PACK.pack(k) for k in RECORD_KEYS]
    map_head = _PACK.pack_map_header(len(RECORD_KEYS))
    for rec in series.records:
        out += map_head
        for key, name in zip(keys, FIELDS):
            out += key
            out += _msgpack_value(getattr(rec, name))
        out += keys[-1]
        out += host
    return bytes(out)


def encode_cbor(series: TelemetrySeries) -> bytes:
    # cbor2's default encoder: floats as float64, keys in insertion (schema) order
    host = series.host_id
    return cbor2.dumps([record_dict(r, host) for r in series.records])


def encode_as(
    series: TelemetrySeries,
    fmt: FormatId | str,
    cfg: ThresholdConfig | None = None,
    policy: SnapshotPolicy | None = None,
) -> bytes:
    """Encode ``series`` in ``fmt``; ``cfg``/``policy`` only affect MTS-1."""
    fmt = FormatId.parse(fmt) if not isinstance(fmt, FormatId) else fmt
    if not series.records:
        raise EmptySeries("cannot encode an empty series")
    try:
        if fmt is FormatId.JSON:
            return encode_json(series)
        if fmt is FormatId.JSONL:
            return encode_jsonl(series)
        if fmt is FormatId.CBOR:
            return encode_cbor(series)
        if fmt is FormatId.MSGPACK:
            return encode_msgpack(series)
        if fmt is FormatId.MTS1:
            return encode_stream(series, cfg, policy)
        if fmt is FormatId.MTS1_LZ4:
            return encode_stream(series, cfg, policy, compress=True)
    except (TypeError, ValueError, OverflowError, cbor2.CBOREncodeError) as exc:
        raise EncodingFailure(f"{fmt.value}: {exc}") from exc
    raise UnknownFormat(str(fmt))


def decode_as(data: bytes, fmt: FormatId | str) -> TelemetrySeries:
    """Decode a non-MTS encoding back into a series (benchmark semantic check)."""
    fmt = FormatId.parse(fmt) if not isinstance(fmt, FormatId) else fmt
    if fmt is FormatId.JSON:
        objs = json.loads(data)
    elif fmt is FormatId.JSONL:
        objs = [json.loads(line) for line in data.decode("utf-8").splitlines() if line]
    elif fmt is FormatId.CBOR:
        objs = cbor2.loads(data)
    elif fmt is FormatId.MSGPACK:
        unpacker = msgpack.Unpacker(raw=False)
        unpacker.feed(data)
        objs = next(iter(unpacker))
    else:
        return decode_stream(data)
    host = objs[0]["host"] if objs else ""
    return TelemetrySeries(host, [record_from_dict(o) for o in objs])
