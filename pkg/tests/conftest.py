import random

import pytest

from mts1.model import FIELDS, GATED_FIELDS, TelemetryRecord, TelemetrySeries, ThresholdConfig
from mts1.simkit import GeneratorConfig, Walk, generate_series


def max_abs_errors(got: TelemetrySeries, want: TelemetrySeries) -> list[dict]:
    assert len(got.records) == len(want.records)
    return [
        {name: abs(getattr(a, name) - getattr(b, name)) for name in FIELDS}
        for a, b in zip(got.records, want.records)
    ]


def random_thresholds(rng: random.Random) -> ThresholdConfig:
    choice = rng.random()
    if choice < 0.25:
        return ThresholdConfig.lossless()
    if choice < 0.5:
        return ThresholdConfig()
    scales = {"cpu_freq": 50.0, "net_sent": 5000.0, "net_recv": 5000.0, "uptime": 100.0}
    return ThresholdConfig(
        **{
            name: rng.choice([0.0, rng.uniform(0, 0.2), rng.uniform(0, 3)]) * scales.get(name, 1.0)
            for name in GATED_FIELDS
        }
    )


def random_series(rng: random.Random, n: int | None = None) -> TelemetrySeries:
    """A varied series: generator walks or raw uniform noise, any length 1..80."""
    n = n or rng.randint(1, 80)
    if rng.random() < 0.5:
        cfg = GeneratorConfig(
            seed=rng.getrandbits(64),
            n_records=n,
            interval=rng.choice([1.0, 5.0, 30.0, 60.0]),
            cpu_load=Walk(rng.uniform(0, 100), rng.choice([0.0, 0.3, 2.0, 15.0]), 0.0, 100.0),
            core_temp=Walk(45.0, rng.choice([0.0, 0.8, 5.0]), -40.0, 150.0),
            mem_pressure=Walk(rng.uniform(0, 100), rng.choice([0.0, 1.5, 10.0]), 0.0, 100.0),
            disk_occupation=Walk(60.0, rng.choice([0.0, 0.02, 1.0]), 0.0, 100.0),
            cpu_freq=Walk(2400.0, rng.choice([0.0, 40.0, 400.0]), 400.0, 6000.0, decimals=rng.choice([0, 2])),
        )
        return generate_series(cfg, f"h{rng.randint(0, 999)}")
    ts = rng.randint(0, 2**40)
    sent, recv, up = rng.randint(0, 2**40), rng.randint(0, 2**40), rng.randint(0, 10**6)
    records = []
    for _ in range(n):
        ts += rng.randint(1, 120_000)
        sent += rng.randint(0, 10**7)
        recv += rng.randint(0, 10**7)
        up += rng.randint(0, 120)
        records.append(
            TelemetryRecord(
                ts,
                rng.uniform(0, 100),
                rng.uniform(0, 100_000),
                rng.uniform(-40, 150),
                rng.uniform(0, 100),
                rng.uniform(0, 100),
                sent,
                recv,
                up,
            )
        )
    return TelemetrySeries("raw", records)


@pytest.fixture(scope="session")
def series_1k():
    return generate_series(GeneratorConfig(seed=11, n_records=1_000))


@pytest.fixture(scope="session")
def series_10k():
    return generate_series(GeneratorConfig(seed=0, n_records=10_000))
