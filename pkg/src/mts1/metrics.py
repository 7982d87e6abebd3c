"""Transmission cost model, size reduction, and byte-level information density.

Units are decimal: 1 MB = 10**6 bytes, 1 GB = 10**9 bytes.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DivisionByZeroBaseline, EmptyInput

MB = 10**6
GB = 10**9
SECONDS_PER_DAY = 86_400


@dataclass(frozen=True)
class CostParams:
    bytes_per_payload: float
    freq: float
    hosts: float
    price_per_mb: float
    freq_unit: str = "month"

    def __post_init__(self):
        for name in ("bytes_per_payload", "freq", "hosts", "price_per_mb"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def total_bytes(self) -> float:
        return self.bytes_per_payload * self.freq * self.hosts


def transmission_cost(p: CostParams) -> float:
    """Cost per ``p.freq_unit``: bytes x frequency x hosts, priced per MB."""
    return p.total_bytes / MB * p.price_per_mb


@dataclass(frozen=True)
class FleetProjection:
    hosts: float
    interval_s: float
    days: float
    b_json: float
    b_fmt: float
    price_per_gb: float
    transmissions: float
    json_gb: float
    fmt_gb: float
    saved_gb: float
    json_cost: float
    fmt_cost: float
    monthly_savings: float
    annual_savings: float

    def as_dict(self) -> dict:
        return asdict(self)


def fleet_projection(
    hosts: float,
    interval: float,
    days: float,
    b_json: float,
    b_mts1: float,
    price: float,
) -> FleetProjection:
    """Project bandwidth and savings for a fleet over ``days``.

    ``price`` is per GB. Monthly figures are normalised to a 30-day month;
    annual savings are twelve times the monthly figure.
    """
    if interval <= 0 or days <= 0:
        raise ValueError("interval and days must be positive")
    if min(hosts, b_json, b_mts1, price) < 0:
        raise ValueError("hosts, payload sizes and price must be non-negative")
    n = hosts * (SECONDS_PER_DAY / interval) * days
    if float(n).is_integer():
        n = int(n)
    json_gb = n * b_json / GB
    fmt_gb = n * b_mts1 / GB
    saved_gb = json_gb - fmt_gb
    monthly = saved_gb * price * 30 / days
    return FleetProjection(
        hosts=hosts,
        interval_s=interval,
        days=days,
        b_json=b_json,
        b_fmt=b_mts1,
        price_per_gb=price,
        transmissions=n,
        json_gb=json_gb,
        fmt_gb=fmt_gb,
        saved_gb=saved_gb,
        json_cost=json_gb * price,
        fmt_cost=fmt_gb * price,
        monthly_savings=monthly,
        annual_savings=12 * monthly,
    )


def reduction_ratio(b_fmt: float, b_json: float) -> float:
    if b_json <= 0:
        raise DivisionByZeroBaseline("JSON baseline size must be positive")
    return 1.0 - b_fmt / b_json


def marginal_cost_gradient(b_a: float, b_b: float) -> float:
    """Ratio of marginal per-payload costs of two formats (cost is linear in n)."""
    if b_b <= 0:
        raise DivisionByZeroBaseline("baseline payload size must be positive")
    return b_a / b_b


@dataclass(frozen=True)
class EntropyReport:
    entropy_bits_per_byte: float
    size_bytes: int
    total_bits: float
    density: float

    def as_dict(self) -> dict:
        return asdict(self)


def byte_histogram(data: bytes) -> np.ndarray:
    return np.bincount(np.frombuffer(data, dtype=np.uint8), minlength=256)


def empirical_entropy(data: bytes) -> EntropyReport:
    """Shannon entropy of the byte histogram of ``data``."""
    if not data:
        raise EmptyInput("entropy of empty input is undefined")
    counts = byte_histogram(data)
    counts = counts[counts > 0]
    p = counts / len(data)
    h = float(-(p * np.log2(p)).sum())
    h = 0.0 if h <= 0 else min(h, 8.0)
    return EntropyReport(h, len(data), h * len(data), h)


@dataclass
class BenchRow:
    corpus: str
    n: int
    format: str
    bytes: int
    bytes_per_payload: float
    reduction_vs_json: float | None
    entropy_bits_per_byte: float


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    growth: dict[str, float] = field(default_factory=dict)

    def total(self, corpus: str, fmt: str) -> int:
        for row in self.rows:
            if row.corpus == corpus and row.format == fmt:
                return row.bytes
        raise KeyError((corpus, fmt))


def growth_factor(size_small: int, size_large: int) -> float:
    if size_small <= 0:
        raise DivisionByZeroBaseline("smaller corpus encodes to zero bytes")
    return size_large / size_small

