"""Seeded synthetic telemetry: clamped Gaussian random walks plus bursty counters."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..model import TelemetryRecord, TelemetrySeries


@dataclass(frozen=True)
class Walk:
    start: float
    stddev: float
    lo: float
    hi: float
    decimals: int = 2

    def __post_init__(self):
        if not self.lo <= self.start <= self.hi:
            raise ValueError(f"walk start {self.start} outside [{self.lo}, {self.hi}]")
        if self.stddev < 0:
            raise ValueError("walk stddev must be >= 0")


# ranges each metric may legally occupy
_LIMITS = {
    "cpu_load": (0.0, 100.0),
    "cpu_freq": (0.0, float("inf")),
    "core_temp": (-40.0, 150.0),
    "mem_pressure": (0.0, 100.0),
    "disk_occupation": (0.0, 100.0),
}


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n_records: int = 10_000
    interval: float = 30.0
    jitter_ms: int = 250
    start_timestamp: int = 1_700_000_000_000
    start_uptime: int = 86_400
    cpu_load: Walk = field(default_factory=lambda: Walk(35.0, 2.0, 0.0, 100.0))
    cpu_freq: Walk = field(default_factory=lambda: Walk(2400.0, 40.0, 800.0, 4800.0, decimals=0))
    core_temp: Walk = field(default_factory=lambda: Walk(45.0, 0.8, 25.0, 95.0))
    mem_pressure: Walk = field(default_factory=lambda: Walk(40.0, 1.5, 0.0, 100.0))
    disk_occupation: Walk = field(default_factory=lambda: Walk(60.0, 0.02, 0.0, 100.0))
    # mean bytes per second; per-sample increments are Gaussian around rate*dt
    net_sent_rate: float = 2_000.0
    net_recv_rate: float = 8_000.0
    net_stddev_frac: float = 0.25
    net_start: int = 500_000_000
    burst_prob: float = 0.05
    burst_factor: float = 10.0

    def __post_init__(self):
        if self.n_records < 1:
            raise ValueError("n_records must be >= 1")
        if self.interval <= 0:
            raise ValueError("interval must be > 0")
        if not 0 <= self.jitter_ms < self.interval * 1000:
            raise ValueError("jitter_ms must be in [0, interval)")
        if not 0 <= self.burst_prob <= 1:
            raise ValueError("burst_prob must be in [0, 1]")
        for name, (lo, hi) in _LIMITS.items():
            walk = getattr(self, name)
            if walk.lo < lo or walk.hi > hi:
                raise ValueError(f"{name} clamp [{walk.lo}, {walk.hi}] exceeds [{lo}, {hi}]")


def generate_series(cfg: GeneratorConfig, host_id: str = "host-0001") -> TelemetrySeries:
    rng = random.Random(cfg.seed)
    walks = [(name, getattr(cfg, name)) for name in _LIMITS]
    state = {name: w.start for name, w in walks}
    ts = cfg.start_timestamp
    sent = recv = cfg.net_start
    step_ms = round(cfg.interval * 1000)
    records = []
    for i in range(cfg.n_records):
        if i:
            dt_ms = step_ms + (rng.randint(-cfg.jitter_ms, cfg.jitter_ms) if cfg.jitter_ms else 0)
            ts += dt_ms
            for name, w in walks:
                if w.stddev:
                    state[name] = min(w.hi, max(w.lo, state[name] + rng.gauss(0.0, w.stddev)))
            sent += _net_increment(rng, cfg, cfg.net_sent_rate * dt_ms / 1000)
            recv += _net_increment(rng, cfg, cfg.net_recv_rate * dt_ms / 1000)
        values = {name: float(round(state[name], w.decimals)) for name, w in walks}
        records.append(
            TelemetryRecord(
                timestamp=ts,
                net_sent=sent,
                net_recv=recv,
                uptime=cfg.start_uptime + (ts - cfg.start_timestamp) // 1000,
                **values,
            )
        )
    return TelemetrySeries(host_id, records)


def _net_increment(rng: random.Random, cfg: GeneratorConfig, mean: float) -> int:
    if mean <= 0:
        return 0
    inc = max(0, round(rng.gauss(mean, mean * cfg.net_stddev_frac)))
    if rng.random() < cfg.burst_prob:
        inc = round(inc * cfg.burst_factor)
    return inc
