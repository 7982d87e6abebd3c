"""Bounded store-and-forward frame queue with an optional durable spill file.

Spill file layout: ``[u32 LE length][frame bytes]`` repeated, then a u32 LE
CRC32C of everything before it. An empty queue is an empty file.

Eviction order when over capacity:

1. the oldest DELTA that precedes the most recent FULL (its baseline has
   been superseded),
2. the oldest FULL other than the most recent one,
3. the oldest DELTA after the most recent FULL.

The most recent FULL is never evicted, so the newest segment stays
decodable whenever capacity is at least the snapshot interval.
"""

from __future__ import annotations

import os
import struct
import threading
from dataclasses import dataclass, field
from pathlib import Path

import crc32c

from ..codec.frames import RecordFrame, read_frame
from ..errors import FrameError, SpillCorruption

_U32 = struct.Struct("<I")


@dataclass
class EnqueueOutcome:
    accepted: bool
    evicted: list[RecordFrame] = field(default_factory=list)


class OfflineQueue:
    def __init__(self, capacity: int, spill_path: str | os.PathLike | None = None):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.spill_path = Path(spill_path) if spill_path is not None else None
        self._frames: list[RecordFrame] = []
        self._crc = 0
        self._lock = threading.Lock()
        if self.spill_path is not None:
            if self.spill_path.exists() and self.spill_path.stat().st_size:
                self._frames = _read_spill(self.spill_path)
                self._rewrite()
            else:
                self.spill_path.write_bytes(b"")

    def __len__(self) -> int:
        return len(self._frames)

    def frames(self) -> list[RecordFrame]:
        with self._lock:
            return list(self._frames)

    def enqueue(self, frame: RecordFrame) -> EnqueueOutcome:
        with self._lock:
            self._frames.append(frame)
            evicted = []
            while len(self._frames) > self.capacity:
                evicted.append(self._frames.pop(self._victim()))
            if self.spill_path is not None:
                if evicted:
                    self._rewrite()
                else:
                    self._append(frame)
            return EnqueueOutcome(not any(f is frame for f in evicted), evicted)

    def drain(self) -> list[RecordFrame]:
        """Return and clear every queued frame, oldest first."""
        with self._lock:
            if self.spill_path is not None:
                frames = _read_spill(self.spill_path) if self.spill_path.stat().st_size else []
                self.spill_path.write_bytes(b"")
            else:
                frames = self._frames
            self._frames = []
            self._crc = 0
            return frames

    def _victim(self) -> int:
        frames = self._frames
        last_full = max((i for i, f in enumerate(frames) if f.is_full), default=-1)
        for i in range(last_full):
            if not frames[i].is_full:
                return i
        if last_full > 0:
            return 0
        return last_full + 1

    def _append(self, frame: RecordFrame) -> None:
        rec = _record(frame)
        with open(self.spill_path, "r+b") as fh:
            size = fh.seek(0, os.SEEK_END)
            fh.seek(max(size - 4, 0))
            self._crc = crc32c.crc32c(rec, value=self._crc)
            fh.write(rec + _U32.pack(self._crc))

    def _rewrite(self) -> None:
        body = b"".join(_record(f) for f in self._frames)
        self._crc = crc32c.crc32c(body)
        tmp = self.spill_path.with_name(self.spill_path.name + ".tmp")
        tmp.write_bytes(body + _U32.pack(self._crc) if body else b"")
        os.replace(tmp, self.spill_path)


def _record(frame: RecordFrame) -> bytes:
    data = frame.to_bytes()
    return _U32.pack(len(data)) + data


def _read_spill(path: Path) -> list[RecordFrame]:
    data = path.read_bytes()
    if len(data) < 4:
        raise SpillCorruption(f"{path}: missing CRC trailer")
    body, (crc,) = data[:-4], _U32.unpack(data[-4:])
    if crc32c.crc32c(body) != crc:
        raise SpillCorruption(f"{path}: CRC32C mismatch")
    frames = []
    pos = 0
    while pos < len(body):
        if pos + 4 > len(body):
            raise SpillCorruption(f"{path}: truncated length prefix at {pos}")
        (length,) = _U32.unpack_from(body, pos)
        chunk = body[pos + 4:pos + 4 + length]
        if len(chunk) != length:
            raise SpillCorruption(f"{path}: truncated frame at {pos}")
        try:
            frame, end = read_frame(chunk, 0)
        except FrameError as exc:
            raise SpillCorruption(f"{path}: bad frame at {pos}: {exc}") from exc
        if end != length:
            raise SpillCorruption(f"{path}: frame at {pos} has trailing bytes")
        frames.append(frame)
        pos += 4 + length
    return frames
