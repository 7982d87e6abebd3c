"""MTS-1 stream header and record frame layout.

Header::

    "MTS1" | version u8 | flags u8 | field_count u8 | host_id_len u8 | host_id
    | field_count x f32 LE epsilon | base_timestamp u64 LE

FULL frame::

    0x01 | seq uvarint | timestamp u64 LE | every field in schema order

DELTA frame::

    0x02 | seq uvarint | d_timestamp zigzag varint | presence u16 LE
    | present fields in schema order

Float fields travel as f32 LE. Integer fields travel as zigzag varints in
DELTA frames and as plain LEB128 varints in FULL frames (absolute counters
are never negative). Presence bit ``i`` refers to ``FIELDS[i]``; bit 0
(timestamp) is never set because the timestamp has its own slot.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass
from typing import Iterator

from ..errors import BadMagic, MalformedFrame, MalformedHeader, TruncatedFrame, UnsupportedVersion
from ..model import FIELDS, FLOAT_FIELDS, GATED_FIELDS, HOST_ID_MAX_BYTES, ThresholdConfig
from .wire import read_svarint, read_uvarint, write_svarint, write_uvarint

MAGIC = b"MTS1"
VERSION = 1
FLAG_LZ4 = 0x01
FIELD_COUNT = len(FIELDS)

_F32 = struct.Struct("<f")
_U16 = struct.Struct("<H")
_U64 = struct.Struct("<Q")
# per gated field: (is_float, presence bit)
_LAYOUT = tuple((name in FLOAT_FIELDS, 1 << (i + 1)) for i, name in enumerate(GATED_FIELDS))
_VALID_BITS = sum(bit for _, bit in _LAYOUT)


class FrameKind(enum.IntEnum):
    FULL = 0x01
    DELTA = 0x02


@dataclass(frozen=True)
class StreamHeader:
    host_id: str
    epsilon: ThresholdConfig
    base_timestamp: int
    flags: int = 0
    version: int = VERSION

    @property
    def compressed(self) -> bool:
        return bool(self.flags & FLAG_LZ4)

    def to_bytes(self) -> bytes:
        host = self.host_id.encode("utf-8")
        if len(host) > HOST_ID_MAX_BYTES:
            raise ValueError("host_id longer than 64 bytes")
        out = bytearray(MAGIC)
        out += bytes((self.version, self.flags, FIELD_COUNT, len(host)))
        out += host
        for name in FIELDS:
            out += _F32.pack(self.epsilon.get(name))
        out += _U64.pack(self.base_timestamp)
        return bytes(out)

    @classmethod
    def parse(cls, data: bytes) -> tuple["StreamHeader", int]:
        """Parse the header; returns (header, length in bytes)."""
        if len(data) < 8:
            raise TruncatedFrame("stream shorter than the fixed header", 0)
        if data[:4] != MAGIC:
            raise BadMagic(f"bad magic {bytes(data[:4])!r}")
        version, flags, field_count, host_len = data[4:8]
        if version != VERSION:
            raise UnsupportedVersion(f"unsupported version {version}")
        if flags & ~FLAG_LZ4:
            raise MalformedHeader(f"reserved flag bits set: {flags:#04x}")
        if field_count != FIELD_COUNT:
            raise MalformedHeader(f"field_count {field_count}, this schema has {FIELD_COUNT}")
        end = 8 + host_len + 4 * field_count + 8
        if len(data) < end:
            raise TruncatedFrame("header truncated", 0)
        try:
            host_id = bytes(data[8:8 + host_len]).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedHeader("host_id is not valid UTF-8") from exc
        pos = 8 + host_len
        eps = [_F32.unpack_from(data, pos + 4 * i)[0] for i in range(field_count)]
        if eps[0] != 0.0:
            raise MalformedHeader("timestamp epsilon must be 0")
        try:
            epsilon = ThresholdConfig(**dict(zip(GATED_FIELDS, eps[1:])))
        except ValueError as exc:
            raise MalformedHeader(str(exc)) from exc
        (base_ts,) = _U64.unpack_from(data, end - 8)
        return cls(host_id, epsilon, base_ts, flags, version), end


@dataclass(frozen=True)
class RecordFrame:
    """One frame as carried on the wire.

    ``time`` is the absolute timestamp for FULL frames and the timestamp
    delta for DELTA frames. ``values`` has one slot per gated field in schema
    order: absolute values (FULL) or deltas (DELTA), ``None`` when absent.
    """

    kind: FrameKind
    seq: int
    time: int
    values: tuple

    @property
    def is_full(self) -> bool:
        return self.kind is FrameKind.FULL

    @property
    def presence(self) -> int:
        return sum(bit for (_, bit), v in zip(_LAYOUT, self.values) if v is not None)

    def to_bytes(self) -> bytes:
        out = bytearray()
        self.write(out)
        return bytes(out)

    def write(self, out: bytearray) -> None:
        out.append(self.kind)
        write_uvarint(out, self.seq)
        if self.kind is FrameKind.FULL:
            out += _U64.pack(self.time)
            for (is_float, _), value in zip(_LAYOUT, self.values):
                if is_float:
                    out += _F32.pack(value)
                else:
                    write_uvarint(out, value)
            return
        write_svarint(out, self.time)
        out += _U16.pack(self.presence)
        for (is_float, _), value in zip(_LAYOUT, self.values):
            if value is None:
                continue
            if is_float:
                out += _F32.pack(value)
            else:
                write_svarint(out, value)


def read_frame(data: bytes, pos: int) -> tuple[RecordFrame, int]:
    """Parse one frame at ``pos``; returns (frame, position after it)."""
    start = pos
    try:
        kind = FrameKind(data[pos])
    except IndexError:
        raise TruncatedFrame("frame kind byte missing", start) from None
    except ValueError:
        raise MalformedFrame(f"unknown frame kind {data[pos]:#04x}", start) from None
    seq, pos = read_uvarint(data, pos + 1)
    try:
        if kind is FrameKind.FULL:
            (time,) = _U64.unpack_from(data, pos)
            pos += 8
            values = []
            for is_float, _ in _LAYOUT:
                if is_float:
                    values.append(_F32.unpack_from(data, pos)[0])
                    pos += 4
                else:
                    value, pos = read_uvarint(data, pos)
                    values.append(value)
            return RecordFrame(kind, seq, time, tuple(values)), pos
        time, pos = read_svarint(data, pos)
        (presence,) = _U16.unpack_from(data, pos)
        pos += 2
        if presence & ~_VALID_BITS:
            raise MalformedFrame(f"presence bitmap {presence:#06x} has reserved bits", start)
        values = []
        for is_float, bit in _LAYOUT:
            if not presence & bit:
                values.append(None)
            elif is_float:
                values.append(_F32.unpack_from(data, pos)[0])
                pos += 4
            else:
                value, pos = read_svarint(data, pos)
                values.append(value)
        return RecordFrame(kind, seq, time, tuple(values)), pos
    except struct.error:
        raise TruncatedFrame("frame payload truncated", start) from None
    except TruncatedFrame as exc:
        raise TruncatedFrame(str(exc), start) from None


def iter_frames(data: bytes, pos: int = 0) -> Iterator[tuple[int, RecordFrame]]:
    """Yield (offset, frame) for consecutive frames from ``pos`` to the end."""
    end = len(data)
    while pos < end:
        frame, nxt = read_frame(data, pos)
        yield pos, frame
        pos = nxt
