"""LEB128 varints and zigzag mapping."""

from __future__ import annotations

from ..errors import MalformedFrame, TruncatedFrame

MAX_VARINT_BYTES = 10


def zigzag(value: int) -> int:
    """Map a signed integer onto an unsigned one: 0, -1, 1, -2 -> 0, 1, 2, 3."""
    return (value << 1) if value >= 0 else ((-value) << 1) - 1


def unzigzag(value: int) -> int:
    return (value >> 1) if not value & 1 else -((value + 1) >> 1)


def write_uvarint(out: bytearray, value: int) -> None:
    if value < 0:
        raise ValueError(f"cannot varint-encode negative value {value}")
    while value > 0x7F:
        out.append((value & 0x7F) | 0x80)
        value >>= 7
    out.append(value)


def encode_uvarint(value: int) -> bytes:
    out = bytearray()
    write_uvarint(out, value)
    return bytes(out)


def read_uvarint(data: bytes, pos: int) -> tuple[int, int]:
    """Decode a varint at ``pos``; returns (value, new_pos)."""
    result = 0
    shift = 0
    start = pos
    while True:
        if pos >= len(data):
            raise TruncatedFrame("varint runs past end of data", start)
        byte = data[pos]
        pos += 1
        result |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return result, pos
        shift += 7
        if pos - start >= MAX_VARINT_BYTES:
            raise MalformedFrame("varint longer than 10 bytes", start)


def write_svarint(out: bytearray, value: int) -> None:
    write_uvarint(out, zigzag(value))


def read_svarint(data: bytes, pos: int) -> tuple[int, int]:
    value, pos = read_uvarint(data, pos)
    return unzigzag(value), pos
