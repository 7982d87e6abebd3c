"""Synthetic corpora, offline frame queue, and forwarding-graph simulation."""

from .generator import GeneratorConfig, Walk, generate_series
from .graph import ForwardingGraph, load_graph, parse_graph
from .queue import EnqueueOutcome, OfflineQueue
from .simulate import EdgeStats, SimReport, SourceStats, edge_rng, simulate

__all__ = [
    "EdgeStats",
    "EnqueueOutcome",
    "ForwardingGraph",
    "GeneratorConfig",
    "OfflineQueue",
    "SimReport",
    "SourceStats",
    "Walk",
    "edge_rng",
    "generate_series",
    "load_graph",
    "parse_graph",
    "simulate",
]
