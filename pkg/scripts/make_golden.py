"""Regenerate the golden conformance fixtures in tests/fixtures/golden/.

Only run this when the wire format deliberately changes; the fixtures are
the frozen reference that tests/test_golden.py checks against.
"""

import json
import textwrap
from pathlib import Path

from mts1.codec import SnapshotPolicy, encode_stream
from mts1.corpus import write_corpus
from mts1.model import TelemetryRecord, TelemetrySeries, ThresholdConfig
from mts1.simkit import GeneratorConfig, generate_series

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "golden"


def tiny() -> TelemetrySeries:
    # every float is exactly representable in f32, so lossless decoding is exact
    rows = [
        (1_700_000_000_000, 12.5, 2400.0, 41.25, 30.0, 55.5, 1000, 2000, 3600),
        (1_700_000_030_000, 12.5, 2400.0, 41.25, 30.0, 55.5, 1000, 2000, 3630),
        (1_700_000_060_125, 14.75, 2800.0, 42.0, 31.5, 55.5, 1300, 2600, 3660),
        (1_700_000_089_990, 3.0, 2800.0, 40.5, 31.5, 55.75, 150_000, 2600, 3689),
        (1_700_000_120_000, 99.0, 1200.0, 60.0, 12.25, 55.75, 150_001, 9_000_000, 3720),
    ]
    return TelemetrySeries("golden-tiny", [TelemetryRecord(*r) for r in rows])


CASES = {
    "tiny_lossless": (tiny, "lossless", 100, False),
    "tiny_k2": (tiny, "lossless", 2, False),
    "gen250_default": (lambda: generate_series(GeneratorConfig(seed=42, n_records=250), "edge-gw-7"),
                       "default", 100, False),
    "gen120_lz4": (lambda: generate_series(GeneratorConfig(seed=7, n_records=120), "lz4-host"),
                   "default", 50, True),
}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (make, profile, k, compress) in CASES.items():
        series = make()
        data = encode_stream(series, ThresholdConfig.from_profile(profile), SnapshotPolicy(k), compress)
        write_corpus(series, OUT / f"{name}.jsonl")
        (OUT / f"{name}.mts1.hex").write_text("\n".join(textwrap.wrap(data.hex(), 64)) + "\n")
        params = {"epsilon_profile": profile, "snapshot_interval": k, "compress": compress}
        (OUT / f"{name}.params.json").write_text(json.dumps(params, indent=2) + "\n")
        print(f"{name}: {len(series)} records, {len(data)} bytes")


if __name__ == "__main__":
    main()
