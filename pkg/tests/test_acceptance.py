"""Acceptance criteria 1-9, each printing one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or ``pytest -m acceptance``.
"""

import json
import random
import time
from pathlib import Path

import pytest

from conftest import max_abs_errors, random_series, random_thresholds
from mts1.baselines import FormatId, encode_as
from mts1.cli import main
from mts1.codec import SnapshotPolicy, decode_stream, encode_frames, encode_stream
from mts1.corpus import read_corpus
from mts1.metrics import empirical_entropy, marginal_cost_gradient, reduction_ratio
from mts1.model import FIELDS, QUANT_BOUND, ThresholdConfig
from mts1.simkit import ForwardingGraph, GeneratorConfig, generate_series, simulate

pytestmark = pytest.mark.acceptance

GOLDEN = Path(__file__).parent / "fixtures" / "golden"


def verdict(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def default_corpora():
    return {n: generate_series(GeneratorConfig(seed=0, n_records=n)) for n in (10_000, 20_000, 50_000)}


def test_criterion_1_cost_model(tmp_path, capsys):
    start = time.perf_counter()
    out = tmp_path / "cost"
    code = main(["cost", "--hosts", "1000", "--interval", "60", "--days", "30", "--b-json", "548",
                 "--b-fmt", "139", "--price-per-gb", "5", "--out", str(out)])
    elapsed = time.perf_counter() - start
    doc = json.loads((tmp_path / "cost.json").read_text())
    rows = {r["format"]: r for r in doc["rows"]}
    s = doc["summary"]
    checks = {
        "exit": code == 0,
        "n": s["transmissions"] == 43_200_000,
        "json_gb": abs(rows["json"]["gb"] - 23.6) <= 0.1,
        "mts1_gb": abs(rows["fmt"]["gb"] - 6.0) <= 0.1,
        "saved_gb": abs(s["saved_gb"] - 17.6) <= 0.1,
        "monthly": abs(s["monthly_savings"] - 88) <= 0.5,
        "annual": abs(s["annual_savings"] - 1056) <= 5,
        "annual_is_12x": s["annual_savings"] == pytest.approx(12 * s["monthly_savings"]),
        "runtime": elapsed < 1.0,
    }
    detail = (f"n={s['transmissions']} json={rows['json']['gb']}GB mts1={rows['fmt']['gb']}GB "
              f"saved={s['saved_gb']}GB ${s['monthly_savings']}/mo ${s['annual_savings']}/yr "
              f"{elapsed:.3f}s failed={[k for k, v in checks.items() if not v]}")
    verdict(capsys, 1, all(checks.values()), detail)


def test_criterion_2_reduction_ratio(capsys):
    r = reduction_ratio(1_390_000, 5_475_079)
    g = marginal_cost_gradient(139, 548)
    ok = abs(r - 0.746) <= 0.0005 and abs(g - 0.254) <= 0.001 and abs(r - 0.7461) <= 0.0005
    verdict(capsys, 2, ok, f"R={r:.4f} gradient={g:.4f}")


def test_criterion_3_compression_ordering(capsys):
    start = time.perf_counter()
    series = generate_series(GeneratorConfig(seed=0, n_records=10_000))
    size = {f: len(encode_as(series, f)) for f in (FormatId.JSON, FormatId.CBOR, FormatId.MSGPACK, FormatId.MTS1)}
    elapsed = time.perf_counter() - start
    r = reduction_ratio(size[FormatId.MTS1], size[FormatId.JSON])
    ok = (size[FormatId.MTS1] <= size[FormatId.MSGPACK] < size[FormatId.CBOR] < size[FormatId.JSON]
          and r >= 0.70 and elapsed < 10)
    verdict(capsys, 3, ok, f"{ {f.value: b for f, b in size.items()} } R={r:.4f} {elapsed:.2f}s")


def test_criterion_4_linear_scaling(default_corpora, capsys):
    start = time.perf_counter()
    sizes = {f: {n: len(encode_as(s, f)) for n, s in default_corpora.items()} for f in FormatId}
    elapsed = time.perf_counter() - start
    growth = {f.value: sizes[f][50_000] / sizes[f][10_000] for f in FormatId}
    monotone = all(v[10_000] < v[20_000] < v[50_000] for v in sizes.values())
    ok = all(4.85 <= g <= 5.15 for g in growth.values()) and monotone and elapsed < 60
    verdict(capsys, 4, ok, f"growth={ {k: round(v, 4) for k, v in growth.items()} } {elapsed:.1f}s")


def _roundtrip_suite(trials: int, seed: int):
    """Yields (series, cfg, k, decoded, lossless_decoded, frames) for randomized inputs."""
    rng = random.Random(seed)
    for _ in range(trials):
        series = random_series(rng)
        cfg = random_thresholds(rng)
        k = rng.randint(1, 40)
        header, frames = encode_frames(series, cfg, SnapshotPolicy(k))
        decoded = decode_stream(encode_stream(series, cfg, SnapshotPolicy(k)))
        lossless = decode_stream(encode_stream(series, ThresholdConfig.lossless(), SnapshotPolicy(k)))
        yield series, cfg, decoded, lossless, frames


@pytest.fixture(scope="module")
def roundtrip_results():
    results = {"trials": 0, "bound": 0, "lossless": 0, "full": 0, "full_positions": 0}
    for series, cfg, decoded, lossless, frames in _roundtrip_suite(1_200, seed=20240611):
        results["trials"] += 1
        errors = max_abs_errors(decoded, series)
        for row in errors:
            results["bound"] += any(row[f] > cfg.get(f) + QUANT_BOUND[f] for f in FIELDS)
        for row in max_abs_errors(lossless, series):
            results["lossless"] += any(row[f] > QUANT_BOUND[f] for f in FIELDS)
        for i, frame in enumerate(frames):
            if frame.is_full:
                results["full_positions"] += 1
                results["full"] += any(errors[i][f] > QUANT_BOUND[f] for f in FIELDS)
    return results


def test_criterion_5_roundtrip_accuracy(roundtrip_results, capsys):
    r = roundtrip_results
    ok = r["trials"] >= 1_000 and r["bound"] == 0 and r["lossless"] == 0
    verdict(capsys, 5, ok, f"{r['trials']} series, {r['bound']} records over eps+q, "
                           f"{r['lossless']} lossless records over q")


def test_criterion_6_snapshot_rezeroing(roundtrip_results, capsys):
    r = roundtrip_results
    ok = r["trials"] >= 1_000 and r["full_positions"] > 0 and r["full"] == 0
    verdict(capsys, 6, ok, f"{r['full_positions']} FULL positions checked, {r['full']} over q")


def test_criterion_7_conformance_fixtures(capsys):
    names = sorted(p.name[: -len(".params.json")] for p in GOLDEN.glob("*.params.json"))
    failures = []
    for name in names:
        params = json.loads((GOLDEN / f"{name}.params.json").read_text())
        data = bytes.fromhex("".join((GOLDEN / f"{name}.mts1.hex").read_text().split()))
        corpus = read_corpus(GOLDEN / f"{name}.jsonl")
        cfg = ThresholdConfig.from_profile(params["epsilon_profile"])
        decoded = decode_stream(data)
        within = len(decoded) == len(corpus) and all(
            row[f] <= cfg.get(f) + QUANT_BOUND[f] for row in max_abs_errors(decoded, corpus) for f in FIELDS
        )
        same = encode_stream(corpus, cfg, SnapshotPolicy(params["snapshot_interval"]), params["compress"]) == data
        if not (within and same):
            failures.append(name)
    ok = len(names) >= 4 and not failures
    verdict(capsys, 7, ok, f"{len(names)} fixtures, failures={failures}")


def test_criterion_8_entropy(default_corpora, capsys):
    uniform = empirical_entropy(bytes(range(256))).entropy_bits_per_byte
    corpora = dict(default_corpora)
    for seed in range(1, 4):
        corpora[f"seed{seed}"] = generate_series(GeneratorConfig(seed=seed, n_records=10_000))
    pairs = {
        name: (empirical_entropy(encode_as(s, FormatId.MTS1)).entropy_bits_per_byte,
               empirical_entropy(encode_as(s, FormatId.JSON)).entropy_bits_per_byte)
        for name, s in corpora.items()
    }
    ok = uniform == 8.0 and all(m > j for m, j in pairs.values())
    shown = {k: (round(m, 3), round(j, 3)) for k, (m, j) in pairs.items()}
    verdict(capsys, 8, ok, f"uniform={uniform} (mts1, json) bits/byte={shown}")


def test_criterion_9_simulator(capsys):
    start = time.perf_counter()
    seed = 7
    series = generate_series(GeneratorConfig(seed=seed, n_records=10_000))
    cfg, policy = ThresholdConfig(), SnapshotPolicy(100)

    clean = simulate(ForwardingGraph.chain(["edge", "sink"], 0.0), {"edge": series}, cfg, policy, seed)
    src = clean.sources["edge"]
    got = decode_stream(encode_stream(series, cfg, policy))
    clean_ok = (
        src.reconstructed == len(series)
        and [r for _, r in src.reconstruction] == list(got.records)
        and all(clean.max_error[f] <= cfg.get(f) + QUANT_BOUND[f] for f in FIELDS)
    )

    lossy = simulate(ForwardingGraph.chain(["edge", "sink"], 0.1), {"edge": series}, cfg, policy, seed)
    rng = random.Random(f"{seed}:edge->sink")
    oracle = sum(rng.random() >= 0.1 for _ in range(len(series))) / len(series)
    src = lossy.sources["edge"]
    within = all(
        abs(getattr(rec, f) - getattr(series.records[i], f)) <= cfg.get(f) + QUANT_BOUND[f]
        for i, rec in src.reconstruction for f in FIELDS
    )
    elapsed = time.perf_counter() - start
    ok = (clean_ok and abs(lossy.delivery_ratio - oracle) <= 0.02 and within
          and lossy.within_theta and elapsed < 30)
    verdict(capsys, 9, ok, f"p=0 ok={clean_ok}; p=0.1 delivery={lossy.delivery_ratio:.4f} "
                           f"oracle={oracle:.4f} reconstructed={src.reconstructed} "
                           f"within_theta={within} {elapsed:.1f}s")
