import pytest

from mts1.errors import DisconnectedGraph, GraphError
from mts1.simkit import ForwardingGraph, parse_graph

TREE = """\
# edge devices report through a gateway
dev1 gw 0.1
dev2 gw 0.2   # flaky radio
gw   sink 0.0

dev3 sink 0.05
"""


def test_parse_tree():
    g = parse_graph(TREE)
    assert g.sink == "sink"
    assert g.nodes == {"dev1", "dev2", "dev3", "gw", "sink"}
    assert g.loss[("dev2", "gw")] == 0.2
    assert g.path("dev1") == [("dev1", "gw"), ("gw", "sink")]
    assert g.path("dev3") == [("dev3", "sink")]
    assert g.path("sink") == []


def test_route_prefers_fewest_hops():
    g = ForwardingGraph({("a", "b"): 0, ("b", "sink"): 0, ("a", "sink"): 0.5})
    assert g.path("a") == [("a", "sink")]


def test_route_ties_broken_by_name():
    g = ForwardingGraph({("a", "y"): 0, ("a", "x"): 0, ("x", "s"): 0, ("y", "s"): 0})
    assert g.path("a") == [("a", "x"), ("x", "s")]


def test_chain():
    g = ForwardingGraph.chain(["a", "b", "c"], 0.05)
    assert g.path("a") == [("a", "b"), ("b", "c")]


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("a sink 0.1\nb sink\n", 2),
        ("a sink x\n", 1),
        ("# c\n\na sink 1.5\n", 3),
        ("a sink 0\na sink 0.1\n", 2),
    ],
)
def test_malformed_lines_report_line_number(text, lineno):
    with pytest.raises(GraphError) as info:
        parse_graph(text)
    assert info.value.line == lineno
    assert f"line {lineno}" in str(info.value)


def test_cycle_rejected():
    with pytest.raises(GraphError, match="cycle"):
        parse_graph("a b 0\nb c 0\nc a 0\n")


def test_two_sinks_rejected():
    with pytest.raises(DisconnectedGraph):
        parse_graph("a s1 0\nb s2 0\n")


def test_empty_and_self_loop():
    with pytest.raises(GraphError):
        parse_graph("# nothing\n")
    with pytest.raises(GraphError):
        ForwardingGraph({("a", "a"): 0})


def test_unknown_node():
    with pytest.raises(DisconnectedGraph):
        ForwardingGraph.chain(["a", "sink"]).path("zz")
