import math
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mts1.errors import DivisionByZeroBaseline, EmptyInput
from mts1.metrics import (
    CostParams,
    empirical_entropy,
    fleet_projection,
    marginal_cost_gradient,
    reduction_ratio,
    transmission_cost,
)

MONTH = 60 * 24 * 30  # one payload per minute


def test_zero_bytes_cost_nothing():
    assert transmission_cost(CostParams(0, MONTH, 1000, 1.0)) == 0


def test_json_fleet_cost():
    p = CostParams(548, MONTH, 1000, price_per_mb=5 / 1000)
    assert p.total_bytes / 1e9 == pytest.approx(23.6736)
    assert transmission_cost(p) == pytest.approx(118.368)


def test_mts1_fleet_bandwidth():
    p = CostParams(139, MONTH, 1000, price_per_mb=5 / 1000)
    assert p.total_bytes / 1e9 == pytest.approx(6.0048)


@given(
    st.floats(0, 1e4), st.floats(0, 1e6), st.floats(0, 1e5), st.floats(0, 10),
    st.sampled_from(["bytes_per_payload", "freq", "hosts", "price_per_mb"]),
)
def test_cost_is_linear_in_each_input(b, f, h, p, name):
    base = CostParams(b, f, h, p)
    doubled = replace(base, **{name: 2 * getattr(base, name)})
    assert transmission_cost(doubled) == pytest.approx(2 * transmission_cost(base), rel=1e-12, abs=1e-300)


def test_fleet_projection_reference_fleet():
    proj = fleet_projection(1000, 60, 30, 548, 139, 5)
    assert proj.transmissions == 43_200_000
    assert proj.json_gb == pytest.approx(23.6736)
    assert proj.fmt_gb == pytest.approx(6.0048)
    assert proj.saved_gb == pytest.approx(17.6688)
    assert proj.monthly_savings == pytest.approx(88.344)
    assert proj.annual_savings == pytest.approx(12 * 88.344)


def test_fleet_projection_equal_payloads():
    proj = fleet_projection(1000, 60, 30, 300, 300, 5)
    assert proj.saved_gb == 0 and proj.monthly_savings == 0 and proj.annual_savings == 0


def test_fleet_projection_zero_hosts():
    proj = fleet_projection(0, 60, 30, 548, 139, 5)
    assert proj.transmissions == 0 and proj.json_gb == 0 and proj.annual_savings == 0


def test_reduction_ratio():
    assert reduction_ratio(1.33, 5.22) == pytest.approx(0.7452, abs=1e-4)
    assert reduction_ratio(1_390_000, 5_475_079) == pytest.approx(0.7461, abs=1e-4)
    assert reduction_ratio(10, 10) == 0
    with pytest.raises(DivisionByZeroBaseline):
        reduction_ratio(1, 0)


def test_marginal_cost_gradient():
    assert marginal_cost_gradient(139, 548) == pytest.approx(0.2537, abs=1e-4)
    assert marginal_cost_gradient(1_390_000, 5_475_079) == pytest.approx(0.2539, abs=1e-4)
    assert marginal_cost_gradient(7, 7) == 1.0
    with pytest.raises(DivisionByZeroBaseline):
        marginal_cost_gradient(1, 0)


@given(st.integers(0, 10**9), st.integers(1, 10**9))
def test_reduction_is_one_minus_gradient(a, b):
    assert reduction_ratio(a, b) == 1 - marginal_cost_gradient(a, b)


def test_entropy_uniform_and_constant():
    assert empirical_entropy(bytes(range(256))).entropy_bits_per_byte == 8.0
    assert empirical_entropy(bytes(range(256)) * 13).entropy_bits_per_byte == 8.0
    assert empirical_entropy(b"\x07" * 500).entropy_bits_per_byte == 0.0


def test_entropy_hand_computed():
    # histogram {a: 2, b: 1}
    expected = -(2 / 3) * math.log2(2 / 3) - (1 / 3) * math.log2(1 / 3)
    rep = empirical_entropy(b"aab")
    assert rep.entropy_bits_per_byte == pytest.approx(expected, abs=1e-12)
    assert rep.entropy_bits_per_byte == pytest.approx(0.918, abs=5e-4)
    assert rep.total_bits == pytest.approx(3 * expected)
    assert rep.size_bytes == 3 and rep.density == rep.entropy_bits_per_byte


@given(st.binary(min_size=1, max_size=2000))
def test_entropy_bounds(data):
    h = empirical_entropy(data).entropy_bits_per_byte
    assert 0.0 <= h <= 8.0


def test_entropy_empty():
    with pytest.raises(EmptyInput):
        empirical_entropy(b"")
