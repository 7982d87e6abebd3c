"""Telemetry domain types and the threshold-gated delta operations.

Field order in ``FIELDS`` is the schema order used by every encoding,
including the MTS-1 presence bitmap (bit ``i`` refers to ``FIELDS[i]``).
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field, fields, replace
from typing import Iterable, Mapping

from .errors import EmptySeries, NonMonotonicTimestamp, RangeViolation

FIELDS = (
    "timestamp",
    "cpu_load",
    "cpu_freq",
    "core_temp",
    "mem_pressure",
    "disk_occupation",
    "net_sent",
    "net_recv",
    "uptime",
)
GATED_FIELDS = FIELDS[1:]
FLOAT_FIELDS = frozenset({"cpu_load", "cpu_freq", "core_temp", "mem_pressure", "disk_occupation"})
INT_FIELDS = frozenset({"timestamp", "net_sent", "net_recv", "uptime"})
PERCENT_FIELDS = ("cpu_load", "mem_pressure", "disk_occupation")

# Largest magnitude each float field (or its delta) is expected to reach.
# One f32 ulp at that magnitude bounds wire quantization plus the float64
# bookkeeping error of the reconstruction.
_MAGNITUDE = {
    "cpu_load": 128.0,
    "mem_pressure": 128.0,
    "disk_occupation": 128.0,
    "core_temp": 256.0,
    "cpu_freq": 131072.0,
}
QUANT_BOUND: dict[str, float] = {
    name: (_MAGNITUDE[name] * 2.0**-23 if name in FLOAT_FIELDS else 0.0) for name in FIELDS
}

HOST_ID_MAX_BYTES = 64


def to_f32(value: float) -> float:
    """Round a float to the nearest IEEE-754 single precision value."""
    return struct.unpack("<f", struct.pack("<f", value))[0]


@dataclass(frozen=True, slots=True)
class TelemetryRecord:
    timestamp: int
    cpu_load: float
    cpu_freq: float
    core_temp: float
    mem_pressure: float
    disk_occupation: float
    net_sent: int
    net_recv: int
    uptime: int

    def values(self) -> tuple:
        return tuple(getattr(self, name) for name in FIELDS)

    @classmethod
    def from_values(cls, values: Iterable) -> "TelemetryRecord":
        return cls(*values)


def validate_record(record: TelemetryRecord) -> None:
    """Raise RangeViolation unless ``record`` satisfies the field ranges."""
    for name in PERCENT_FIELDS:
        value = getattr(record, name)
        if not 0.0 <= value <= 100.0:
            raise RangeViolation(f"{name}={value} outside [0, 100]")
    if not -40.0 <= record.core_temp <= 150.0:
        raise RangeViolation(f"core_temp={record.core_temp} outside [-40, 150]")
    for name in ("cpu_freq", "net_sent", "net_recv", "uptime"):
        if getattr(record, name) < 0:
            raise RangeViolation(f"{name}={getattr(record, name)} is negative")
    for name in FLOAT_FIELDS:
        if not math.isfinite(getattr(record, name)):
            raise RangeViolation(f"{name} is not finite")


@dataclass(frozen=True)
class TelemetrySeries:
    host_id: str
    records: tuple[TelemetryRecord, ...]

    def __post_init__(self):
        if len(self.host_id.encode("utf-8")) > HOST_ID_MAX_BYTES:
            raise ValueError(f"host_id longer than {HOST_ID_MAX_BYTES} bytes")
        object.__setattr__(self, "records", tuple(self.records))
        prev = None
        for i, rec in enumerate(self.records):
            if prev is not None and rec.timestamp <= prev:
                raise NonMonotonicTimestamp(
                    f"record {i}: timestamp {rec.timestamp} does not follow {prev}"
                )
            prev = rec.timestamp

    def __len__(self) -> int:
        return len(self.records)

    def validate(self) -> None:
        """Check every record's ranges and counter monotonicity within a boot."""
        if not self.records:
            raise EmptySeries("series has no records")
        prev = None
        for rec in self.records:
            validate_record(rec)
            if prev is not None and rec.uptime >= prev.uptime:
                if rec.net_sent < prev.net_sent or rec.net_recv < prev.net_recv:
                    raise RangeViolation(f"network counter decreased at t={rec.timestamp}")
            prev = rec


@dataclass(frozen=True, slots=True)
class DeltaVector:
    d_cpu_load: float = 0.0
    d_core_temp: float = 0.0
    d_mem_pressure: float = 0.0
    d_disk_occupation: float = 0.0
    d_net_sent: int = 0
    d_net_recv: int = 0
    d_cpu_freq: float = 0.0
    d_uptime: int = 0
    d_timestamp: int = 0

    def get(self, name: str):
        return getattr(self, "d_" + name)

    def gated(self) -> dict:
        """Gated components keyed by field name, in schema order."""
        return {name: getattr(self, "d_" + name) for name in GATED_FIELDS}


@dataclass(frozen=True)
class ThresholdConfig:
    """Per-field epsilon values; a change must exceed epsilon to be sent."""

    cpu_load: float = 0.5
    cpu_freq: float = 10.0
    core_temp: float = 0.5
    mem_pressure: float = 0.5
    disk_occupation: float = 0.1
    net_sent: float = 0.0
    net_recv: float = 0.0
    uptime: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"epsilon for {f.name} must be finite and >= 0, got {value}")

    @classmethod
    def lossless(cls) -> "ThresholdConfig":
        return cls(**{name: 0.0 for name in GATED_FIELDS})

    @classmethod
    def from_profile(cls, profile: str) -> "ThresholdConfig":
        """Resolve a named profile ("default", "lossless") or "field=eps,..." overrides."""
        if profile == "default":
            return cls()
        if profile == "lossless":
            return cls.lossless()
        overrides = {}
        for item in profile.split(","):
            name, sep, value = item.partition("=")
            name = name.strip()
            if not sep or name not in GATED_FIELDS:
                raise ValueError(f"unknown epsilon profile entry {item!r}")
            overrides[name] = float(value)
        return cls(**overrides)

    def get(self, name: str) -> float:
        return 0.0 if name == "timestamp" else getattr(self, name)

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in GATED_FIELDS}

    def quantized(self) -> "ThresholdConfig":
        """The same thresholds rounded to f32, as carried in a stream header."""
        return replace(self, **{name: to_f32(v) for name, v in self.as_dict().items()})


@dataclass(frozen=True)
class AccuracyPolicy:
    """Per-field tolerated reconstruction error (theta).

    Rejects at construction any theta that threshold gating plus f32
    quantization cannot honour.
    """

    theta: Mapping[str, float]
    epsilon: ThresholdConfig = field(default_factory=ThresholdConfig)

    def __post_init__(self):
        theta = {name: float(self.theta.get(name, math.inf)) for name in FIELDS}
        object.__setattr__(self, "theta", theta)
        for name, value in theta.items():
            floor = self.epsilon.get(name) + QUANT_BOUND[name]
            if value < floor:
                raise ValueError(f"theta for {name} ({value}) below epsilon + quantization ({floor})")

    @classmethod
    def tightest(cls, cfg: ThresholdConfig) -> "AccuracyPolicy":
        return cls({name: cfg.get(name) + QUANT_BOUND[name] for name in FIELDS}, cfg)

    def bound(self, name: str) -> float:
        return self.theta[name]


def compute_delta(prev: TelemetryRecord, curr: TelemetryRecord, cfg: ThresholdConfig) -> DeltaVector:
    """Gate each field change against its epsilon; the timestamp is never gated."""
    if curr.timestamp <= prev.timestamp:
        raise NonMonotonicTimestamp(
            f"timestamp {curr.timestamp} does not follow {prev.timestamp}"
        )
    out = {"d_timestamp": curr.timestamp - prev.timestamp}
    for name in GATED_FIELDS:
        diff = getattr(curr, name) - getattr(prev, name)
        out["d_" + name] = diff if abs(diff) > getattr(cfg, name) else type(diff)(0)
    return DeltaVector(**out)


def apply_delta(
    base: TelemetryRecord, delta: DeltaVector, policy: AccuracyPolicy | None = None
) -> TelemetryRecord:
    out = TelemetryRecord(*(getattr(base, name) + delta.get(name) for name in FIELDS))
    if policy is not None:
        for name in PERCENT_FIELDS:
            value = getattr(out, name)
            slack = policy.bound(name)
            if value < -slack or value > 100.0 + slack:
                raise RangeViolation(
                    f"reconstructed {name}={value} leaves [0, 100] by more than theta={slack}"
                )
    return out
