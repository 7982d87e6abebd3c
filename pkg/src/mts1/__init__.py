"""MTS-1: threshold-gated delta-encoded binary telemetry, with benchmark tooling."""

__version__ = "0.1.0"

from .codec import SnapshotPolicy, decode_stream, encode_stream, resync_from_full  # noqa: E402
from .model import (  # noqa: E402
    AccuracyPolicy,
    DeltaVector,
    TelemetryRecord,
    TelemetrySeries,
    ThresholdConfig,
    apply_delta,
    compute_delta,
)

__all__ = [
    "AccuracyPolicy",
    "DeltaVector",
    "SnapshotPolicy",
    "TelemetryRecord",
    "TelemetrySeries",
    "ThresholdConfig",
    "apply_delta",
    "compute_delta",
    "decode_stream",
    "encode_stream",
    "resync_from_full",
]
