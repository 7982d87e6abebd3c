"""Conformance fixtures: canonical JSONL corpora paired with frozen MTS-1 bytes."""

import json
from pathlib import Path

import pytest

from conftest import max_abs_errors
from mts1.codec import SnapshotPolicy, decode_stream, encode_stream
from mts1.corpus import read_corpus
from mts1.model import FIELDS, QUANT_BOUND, ThresholdConfig

GOLDEN = Path(__file__).parent / "fixtures" / "golden"
CASES = sorted(p.name[: -len(".params.json")] for p in GOLDEN.glob("*.params.json"))


def load(name):
    params = json.loads((GOLDEN / f"{name}.params.json").read_text())
    hexdata = "".join((GOLDEN / f"{name}.mts1.hex").read_text().split())
    return read_corpus(GOLDEN / f"{name}.jsonl"), bytes.fromhex(hexdata), params


def test_fixture_set_present():
    assert {"tiny_lossless", "tiny_k2", "gen250_default", "gen120_lz4"} <= set(CASES)


@pytest.mark.parametrize("name", CASES)
def test_reencode_is_byte_identical(name):
    series, data, params = load(name)
    cfg = ThresholdConfig.from_profile(params["epsilon_profile"])
    assert encode_stream(series, cfg, SnapshotPolicy(params["snapshot_interval"]), params["compress"]) == data


@pytest.mark.parametrize("name", CASES)
def test_decodes_to_corpus(name):
    series, data, params = load(name)
    cfg = ThresholdConfig.from_profile(params["epsilon_profile"])
    out = decode_stream(data)
    assert out.host_id == series.host_id
    for row in max_abs_errors(out, series):
        for field in FIELDS:
            assert row[field] <= cfg.get(field) + QUANT_BOUND[field]


@pytest.mark.parametrize("name", ["tiny_lossless", "tiny_k2"])
def test_dyadic_fixture_decodes_exactly(name):
    series, data, params = load(name)
    out = decode_stream(data)
    assert out == series
    assert encode_stream(out, ThresholdConfig.lossless(), SnapshotPolicy(params["snapshot_interval"])) == data
