"""MTS-1 wire format: header, FULL/DELTA frames, encoder and decoder."""

from .frames import FLAG_LZ4, MAGIC, VERSION, FrameKind, RecordFrame, StreamHeader, iter_frames, read_frame
from .stream import (
    Decoder,
    Encoder,
    SnapshotPolicy,
    assemble,
    decode_stream,
    encode_frames,
    encode_stream,
    open_stream,
    parse_stream,
    resync_from_full,
)

__all__ = [
    "FLAG_LZ4",
    "MAGIC",
    "VERSION",
    "Decoder",
    "Encoder",
    "FrameKind",
    "RecordFrame",
    "SnapshotPolicy",
    "StreamHeader",
    "assemble",
    "decode_stream",
    "encode_frames",
    "encode_stream",
    "iter_frames",
    "open_stream",
    "parse_stream",
    "read_frame",
    "resync_from_full",
]
