"""In-process store-and-forward transport simulation with Bernoulli frame loss.

Each edge draws from its own RNG, ``random.Random(f"{seed}:{src}->{dst}")``,
one ``random()`` per frame offered to it; the frame is lost when the draw
is below the edge's loss probability.

Recovery: the sink drops DELTA frames it cannot apply (gap or no baseline)
and asks the source for a FULL snapshot, which the source sends as its next
frame. The request path is assumed reliable.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import asdict, dataclass, field

from ..codec import Decoder, Encoder, SnapshotPolicy
from ..errors import DisconnectedGraph
from ..model import FIELDS, QUANT_BOUND, TelemetryRecord, TelemetrySeries, ThresholdConfig
from .graph import ForwardingGraph


@dataclass
class EdgeStats:
    sent: int = 0
    lost: int = 0
    delivered: int = 0
    bytes: int = 0


@dataclass
class SourceStats:
    records: int = 0
    frames_sent: int = 0
    frames_delivered: int = 0
    reconstructed: int = 0
    missing: int = 0
    gaps: int = 0
    retransmitted_full: int = 0
    theta_violations: int = 0
    max_error: dict[str, float] = field(default_factory=lambda: {name: 0.0 for name in FIELDS})
    # (seq, reconstructed record) pairs in arrival order
    reconstruction: list[tuple[int, TelemetryRecord]] = field(default_factory=list, repr=False)


@dataclass
class SimReport:
    seed: int
    edges: dict[str, EdgeStats]
    sources: dict[str, SourceStats]
    theta: dict[str, float]

    @property
    def max_error(self) -> dict[str, float]:
        return {
            name: max((s.max_error[name] for s in self.sources.values()), default=0.0)
            for name in FIELDS
        }

    @property
    def delivery_ratio(self) -> float:
        sent = sum(s.frames_sent for s in self.sources.values())
        return sum(s.frames_delivered for s in self.sources.values()) / sent if sent else 0.0

    @property
    def within_theta(self) -> bool:
        return all(s.theta_violations == 0 for s in self.sources.values())

    def as_dict(self) -> dict:
        sources = {}
        for node, st in self.sources.items():
            d = asdict(st)
            d.pop("reconstruction")
            sources[node] = d
        return {
            "seed": self.seed,
            "delivery_ratio": self.delivery_ratio,
            "within_theta": self.within_theta,
            "theta": self.theta,
            "max_error": self.max_error,
            "edges": {k: asdict(v) for k, v in self.edges.items()},
            "sources": sources,
        }


def edge_rng(seed: int, src: str, dst: str) -> random.Random:
    return random.Random(f"{seed}:{src}->{dst}")


class _Source:
    def __init__(self, node, series, cfg, policy, route):
        self.node = node
        self.series = series
        self.route = route
        self.encoder = Encoder(series.host_id, series.records[0].timestamp, cfg, policy)
        self.decoder = Decoder(self.encoder.header)
        self.synced = False
        self.stats = SourceStats(records=len(series.records))


def simulate(
    graph: ForwardingGraph,
    series_by_node: dict[str, TelemetrySeries],
    cfg: ThresholdConfig | None = None,
    policy: SnapshotPolicy | None = None,
    seed: int = 0,
) -> SimReport:
    cfg = cfg or ThresholdConfig()
    for node, series in series_by_node.items():
        if node not in graph.nodes:
            raise DisconnectedGraph(f"source {node!r} is not in the graph")
        if not series.records:
            raise ValueError(f"series for {node!r} is empty")
    sources = {
        node: _Source(node, s, cfg, policy, graph.path(node))
        for node, s in sorted(series_by_node.items())
    }
    eps = cfg.quantized()
    theta = {name: eps.get(name) + QUANT_BOUND[name] for name in FIELDS}
    edges = {f"{a}->{b}": EdgeStats() for a, b in graph.loss}
    rngs = {(a, b): edge_rng(seed, a, b) for a, b in graph.loss}

    # interleave sources by timestamp, ties broken by node name
    events = heapq.merge(*(_schedule(node, src.series) for node, src in sources.items()))
    for _, node, i in events:
        src = sources[node]
        record = src.series.records[i]
        frame = src.encoder.encode(record)
        src.stats.retransmitted_full += src.encoder.last_forced
        size = len(frame.to_bytes())
        src.stats.frames_sent += 1
        if not _traverse(src.route, size, graph, rngs, edges):
            continue
        src.stats.frames_delivered += 1
        _receive(src, frame, theta)

    for src in sources.values():
        src.stats.reconstructed = len(src.stats.reconstruction)
        src.stats.missing = src.stats.records - src.stats.reconstructed
    return SimReport(seed, edges, {n: s.stats for n, s in sources.items()}, theta)


def _schedule(node: str, series: TelemetrySeries):
    return ((rec.timestamp, node, i) for i, rec in enumerate(series.records))


def _traverse(route, size, graph, rngs, edges) -> bool:
    for a, b in route:
        st = edges[f"{a}->{b}"]
        st.sent += 1
        st.bytes += size
        if rngs[(a, b)].random() < graph.loss[(a, b)]:
            st.lost += 1
            return False
        st.delivered += 1
    return True


def _receive(src: _Source, frame, theta) -> None:
    dec = src.decoder
    if src.synced and frame.seq != dec.next_seq:
        src.stats.gaps += 1
        src.synced = False
    if not src.synced:
        if not frame.is_full:
            src.encoder.force_full()
            return
        record = dec.resync(frame)
        src.synced = True
    else:
        record = dec.feed(frame)
    original = src.series.records[frame.seq]
    stats = src.stats
    stats.reconstruction.append((frame.seq, record))
    violated = False
    for name in FIELDS:
        err = abs(getattr(record, name) - getattr(original, name))
        if err > stats.max_error[name]:
            stats.max_error[name] = err
        if err > theta[name]:
            violated = True
    stats.theta_violations += violated
