"""Forwarding graphs: edge ``(a, b)`` means ``b`` forwards telemetry for ``a``."""

from __future__ import annotations

import graphlib
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from ..errors import DisconnectedGraph, GraphError


@dataclass(frozen=True)
class ForwardingGraph:
    loss: dict[tuple[str, str], float]

    def __post_init__(self):
        if not self.loss:
            raise GraphError("graph has no edges")
        for (src, dst), p in self.loss.items():
            if src == dst:
                raise GraphError(f"self-loop on {src}")
            if not 0.0 <= p <= 1.0:
                raise GraphError(f"loss probability {p} on {src}->{dst} outside [0, 1]")
        sorter = graphlib.TopologicalSorter()
        for src, dst in self.loss:
            sorter.add(dst, src)
        try:
            order = tuple(sorter.static_order())
        except graphlib.CycleError as exc:
            raise GraphError(f"graph has a cycle: {' -> '.join(exc.args[1])}") from None
        sinks = sorted(n for n in order if n not in self.successors_map())
        if len(sinks) != 1:
            raise DisconnectedGraph(f"expected exactly one sink, found {sinks}")
        object.__setattr__(self, "_nodes", frozenset(order))
        object.__setattr__(self, "_sink", sinks[0])
        object.__setattr__(self, "_next_hop", self._routes())

    @classmethod
    def chain(cls, nodes: list[str], loss: float = 0.0) -> "ForwardingGraph":
        return cls({(a, b): loss for a, b in zip(nodes, nodes[1:])})

    @property
    def nodes(self) -> frozenset[str]:
        return self._nodes

    @property
    def sink(self) -> str:
        return self._sink

    def successors_map(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for src, dst in self.loss:
            out.setdefault(src, []).append(dst)
        return out

    def _routes(self) -> dict[str, str]:
        # hop distance to the sink over reversed edges; next hop = nearest, ties by name
        preds: dict[str, list[str]] = {}
        for src, dst in self.loss:
            preds.setdefault(dst, []).append(src)
        dist = {self._sink: 0}
        todo = deque([self._sink])
        while todo:
            node = todo.popleft()
            for p in preds.get(node, ()):
                if p not in dist:
                    dist[p] = dist[node] + 1
                    todo.append(p)
        return {
            src: min(dsts, key=lambda d: (dist[d], d)) for src, dsts in self.successors_map().items()
        }

    def path(self, source: str) -> list[tuple[str, str]]:
        """Edges a frame from ``source`` traverses to reach the sink."""
        if source not in self._nodes:
            raise DisconnectedGraph(f"node {source!r} is not in the graph")
        edges = []
        node = source
        while node != self._sink:
            nxt = self._next_hop[node]
            edges.append((node, nxt))
            node = nxt
        return edges


def parse_graph(text: str) -> ForwardingGraph:
    """Parse ``src dst loss_prob`` lines; ``#`` starts a comment."""
    loss: dict[tuple[str, str], float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"expected 'src dst loss_prob', got {raw.strip()!r}", lineno)
        src, dst, p = parts
        try:
            prob = float(p)
        except ValueError:
            raise GraphError(f"loss probability {p!r} is not a number", lineno) from None
        if not 0.0 <= prob <= 1.0:
            raise GraphError(f"loss probability {prob} outside [0, 1]", lineno)
        if (src, dst) in loss:
            raise GraphError(f"duplicate edge {src} {dst}", lineno)
        loss[(src, dst)] = prob
    return ForwardingGraph(loss)


def load_graph(path: str | Path) -> ForwardingGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))
