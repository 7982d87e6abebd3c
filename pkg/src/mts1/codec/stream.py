"""Stateful MTS-1 encoder/decoder and whole-stream helpers."""

from __future__ import annotations

from dataclasses import dataclass

import lz4.frame

from ..errors import (
    AccuracyViolation,
    EmptySeries,
    MalformedFrame,
    NoFullFrameAhead,
    NonMonotonicTimestamp,
    RangeViolation,
    SequenceGap,
)
from ..model import (
    FIELDS,
    FLOAT_FIELDS,
    GATED_FIELDS,
    PERCENT_FIELDS,
    QUANT_BOUND,
    AccuracyPolicy,
    TelemetryRecord,
    TelemetrySeries,
    ThresholdConfig,
    compute_delta,
    to_f32,
)
from .frames import FLAG_LZ4, FrameKind, RecordFrame, StreamHeader, iter_frames

_IS_FLOAT = tuple(name in FLOAT_FIELDS for name in GATED_FIELDS)


@dataclass(frozen=True)
class SnapshotPolicy:
    interval_k: int = 100

    def __post_init__(self):
        if self.interval_k < 1:
            raise ValueError("interval_k must be >= 1")


class Encoder:
    """Turns records into frames, gating against the last transmitted state.

    ``last_transmitted`` is exactly what a decoder holds after the same
    frames, so threshold error never accumulates.
    """

    def __init__(
        self,
        host_id: str,
        base_timestamp: int,
        cfg: ThresholdConfig | None = None,
        policy: SnapshotPolicy | None = None,
        flags: int = 0,
    ):
        self.cfg = (cfg or ThresholdConfig()).quantized()
        self.policy = policy or SnapshotPolicy()
        self.header = StreamHeader(host_id, self.cfg, base_timestamp, flags)
        self.last_transmitted: TelemetryRecord | None = None
        self.next_seq = 0
        self._force_full = False
        # True when the last frame was FULL only because force_full() asked
        self.last_forced = False

    def force_full(self) -> None:
        """Make the next frame a FULL snapshot (receiver lost baseline state)."""
        self._force_full = True

    def encode(self, record: TelemetryRecord) -> RecordFrame:
        seq = self.next_seq
        last = self.last_transmitted
        if last is not None and record.timestamp <= last.timestamp:
            raise NonMonotonicTimestamp(
                f"timestamp {record.timestamp} does not follow {last.timestamp}"
            )
        scheduled = last is None or seq % self.policy.interval_k == 0
        self.last_forced = self._force_full and not scheduled
        if scheduled or self._force_full:
            values = tuple(
                to_f32(getattr(record, name)) if is_float else int(getattr(record, name))
                for name, is_float in zip(GATED_FIELDS, _IS_FLOAT)
            )
            frame = RecordFrame(FrameKind.FULL, seq, record.timestamp, values)
            self.last_transmitted = TelemetryRecord(record.timestamp, *values)
            self._force_full = False
        else:
            delta = compute_delta(last, record, self.cfg)
            values = []
            state = [record.timestamp]
            for name, is_float in zip(GATED_FIELDS, _IS_FLOAT):
                d = delta.get(name)
                base = getattr(last, name)
                if d == 0:
                    values.append(None)
                    state.append(base)
                    continue
                w = to_f32(d) if is_float else int(d)
                if w == 0:
                    # below f32 resolution; treated as unchanged
                    values.append(None)
                    state.append(base)
                else:
                    values.append(w)
                    state.append(base + w)
            frame = RecordFrame(FrameKind.DELTA, seq, delta.d_timestamp, tuple(values))
            self.last_transmitted = TelemetryRecord(*state)
        self.next_seq = seq + 1
        return frame


class Decoder:
    """Rebuilds records from frames; keeps every decoded record in ``records``."""

    def __init__(self, header: StreamHeader, policy: AccuracyPolicy | None = None):
        self.header = header
        self.policy = policy or AccuracyPolicy.tightest(header.epsilon)
        check_policy(header, self.policy)
        self.last_transmitted: TelemetryRecord | None = None
        self.next_seq = 0
        self.records: list[TelemetryRecord] = []

    def prefix(self) -> TelemetrySeries:
        return TelemetrySeries(self.header.host_id, self.records)

    def feed(self, frame: RecordFrame, offset: int = -1) -> TelemetryRecord:
        if frame.seq != self.next_seq:
            raise SequenceGap(self.next_seq, frame.seq, offset, self.prefix())
        return self._apply(frame, offset)

    def resync(self, frame: RecordFrame, offset: int = -1) -> TelemetryRecord:
        """Accept a FULL frame regardless of sequence, discarding prior baseline."""
        if not frame.is_full:
            raise MalformedFrame("resync requires a FULL frame", offset)
        self.next_seq = frame.seq
        return self._apply(frame, offset)

    def _apply(self, frame: RecordFrame, offset: int) -> TelemetryRecord:
        if frame.is_full:
            record = TelemetryRecord(frame.time, *frame.values)
        else:
            last = self.last_transmitted
            if last is None:
                raise MalformedFrame("DELTA frame before any FULL frame", offset)
            state = [last.timestamp + frame.time]
            for name, value in zip(GATED_FIELDS, frame.values):
                base = getattr(last, name)
                state.append(base if value is None else base + value)
            record = TelemetryRecord(*state)
            for name in PERCENT_FIELDS:
                v = getattr(record, name)
                slack = self.policy.theta[name]
                if v < -slack or v > 100.0 + slack:
                    raise RangeViolation(
                        f"reconstructed {name}={v} leaves [0, 100] by more than theta={slack}"
                    )
        self.last_transmitted = record
        self.next_seq = frame.seq + 1
        self.records.append(record)
        return record


def check_policy(header: StreamHeader, policy: AccuracyPolicy) -> None:
    """Raise AccuracyViolation if the stream's gating cannot meet ``policy``."""
    for name in FIELDS:
        guaranteed = header.epsilon.get(name) + QUANT_BOUND[name]
        if policy.theta[name] < guaranteed:
            raise AccuracyViolation(
                f"{name}: stream guarantees error <= {guaranteed}, policy requires {policy.theta[name]}"
            )


def encode_frames(
    series: TelemetrySeries,
    cfg: ThresholdConfig | None = None,
    policy: SnapshotPolicy | None = None,
    flags: int = 0,
) -> tuple[StreamHeader, list[RecordFrame]]:
    if not series.records:
        raise EmptySeries("cannot encode an empty series")
    enc = Encoder(series.host_id, series.records[0].timestamp, cfg, policy, flags)
    return enc.header, [enc.encode(rec) for rec in series.records]


def assemble(header: StreamHeader, frames) -> bytes:
    """Serialize a header and frames, compressing the body if the header says so."""
    body = bytearray()
    for frame in frames:
        frame.write(body)
    if header.compressed:
        body = lz4.frame.compress(bytes(body), store_size=True)
    return header.to_bytes() + bytes(body)


def encode_stream(
    series: TelemetrySeries,
    cfg: ThresholdConfig | None = None,
    policy: SnapshotPolicy | None = None,
    compress: bool = False,
) -> bytes:
    header, frames = encode_frames(series, cfg, policy, FLAG_LZ4 if compress else 0)
    return assemble(header, frames)


def open_stream(data: bytes) -> tuple[StreamHeader, bytes, int]:
    """Return (header, logical stream bytes, header length).

    For compressed streams the logical bytes are the header followed by the
    decompressed body, so frame offsets are comparable across both forms.
    """
    header, hlen = StreamHeader.parse(data)
    if header.compressed:
        body = lz4.frame.decompress(bytes(data[hlen:]))
        data = bytes(data[:hlen]) + body
    return header, data, hlen


def parse_stream(data: bytes) -> tuple[StreamHeader, list[tuple[int, RecordFrame]]]:
    """Parse a stream into its header and (offset, frame) pairs."""
    header, logical, hlen = open_stream(data)
    return header, list(iter_frames(logical, hlen))


def decode_stream(data: bytes, policy: AccuracyPolicy | None = None) -> TelemetrySeries:
    header, logical, hlen = open_stream(data)
    dec = Decoder(header, policy)
    for offset, frame in iter_frames(logical, hlen):
        if offset == hlen and not frame.is_full:
            raise MalformedFrame("first frame is not FULL", offset)
        dec.feed(frame, offset)
    return dec.prefix()


def resync_from_full(data: bytes, start_offset: int) -> TelemetrySeries:
    """Decode from the first FULL frame at or after ``start_offset``.

    Decoding stops at the first sequence gap after the resync point; the
    contiguous suffix is returned.
    """
    header, logical, hlen = open_stream(data)
    frames = list(iter_frames(logical, hlen))
    offsets = [off for off, _ in frames]
    if start_offset != len(logical) and start_offset not in offsets:
        raise ValueError(f"offset {start_offset} is not a frame boundary")
    dec = Decoder(header)
    started = False
    for offset, frame in frames:
        if offset < start_offset:
            continue
        if not started:
            if not frame.is_full:
                continue
            dec.resync(frame, offset)
            started = True
            continue
        if frame.seq != dec.next_seq:
            break
        dec.feed(frame, offset)
    if not started:
        raise NoFullFrameAhead(f"no FULL frame at or after offset {start_offset}")
    return dec.prefix()

