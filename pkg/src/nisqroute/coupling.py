"""Coupling graphs, all-pairs shortest paths and CNOT direction handling."""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .circuit import Gate, cnot, h
from .errors import CouplingError, NoEdge, NoPath

INF = math.inf


class Direction(Enum):
    DIRECT = "direct"
    REVERSED = "reversed"
    NONE = "none"


@dataclass(frozen=True)
class CouplingGraph:
    """Directed device graph. ``edges`` keeps the order it was given in."""

    num_qubits: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[float, ...] = field(default=())

    def __post_init__(self):
        edges = tuple((int(c), int(t)) for c, t in self.edges)
        weights = tuple(float(w) for w in self.weights) or (1.0,) * len(edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", weights)
        q = self.num_qubits
        if q < 1:
            raise CouplingError("num_qubits must be positive")
        if len(weights) != len(edges):
            raise CouplingError(f"{len(weights)} weights given for {len(edges)} edges")
        seen = set()
        for c, t in edges:
            if not (0 <= c < q and 0 <= t < q):
                raise CouplingError(f"edge ({c},{t}) references a vertex outside [0, {q})")
            if c == t:
                raise CouplingError(f"self-loop on vertex {c}")
            if (c, t) in seen:
                raise CouplingError(f"duplicate edge ({c},{t})")
            seen.add((c, t))
        if any(not w > 0 or math.isinf(w) for w in weights):
            raise CouplingError("edge weights must be positive and finite")
        assert len(edges) <= q * (q - 1)
        object.__setattr__(self, "_edge_set", frozenset(seen))

    def has_edge(self, control: int, target: int) -> bool:
        return (control, target) in self._edge_set

    def adjacent(self, a: int, b: int) -> bool:
        return self.has_edge(a, b) or self.has_edge(b, a)

    def neighbors(self, v: int, directed: bool = False) -> list[tuple[int, float]]:
        out = []
        for (c, t), w in zip(self.edges, self.weights):
            if c == v:
                out.append((t, w))
            elif not directed and t == v:
                out.append((c, w))
        return out

    def to_dict(self) -> dict:
        d = {"num_qubits": self.num_qubits, "edges": [list(e) for e in self.edges]}
        if any(w != 1.0 for w in self.weights):
            d["weights"] = list(self.weights)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def line(cls, n: int) -> "CouplingGraph":
        """LNN line ``0 -> 1 -> ... -> n-1``."""
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))


def parse_coupling(text: str) -> CouplingGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CouplingError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "num_qubits" not in doc or "edges" not in doc:
        raise CouplingError('expected an object with "num_qubits" and "edges"')
    n = doc["num_qubits"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise CouplingError("num_qubits must be an integer")
    edges = doc["edges"]
    if not isinstance(edges, list) or any(
        not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, int) for v in e)
        for e in edges
    ):
        raise CouplingError("edges must be a list of [control, target] integer pairs")
    weights = doc.get("weights", [])
    if not isinstance(weights, list) or any(not isinstance(w, (int, float)) for w in weights):
        raise CouplingError("weights must be a list of numbers")
    if "weights" in doc and len(weights) != len(edges):
        raise CouplingError(f"{len(weights)} weights given for {len(edges)} edges")
    return CouplingGraph(n, tuple(tuple(e) for e in edges), tuple(weights))


@dataclass(frozen=True)
class DistanceMatrix:
    dist: np.ndarray
    next_hop: np.ndarray  # -1 where unreachable
    directed: bool

    def __post_init__(self):
        self.dist.setflags(write=False)
        self.next_hop.setflags(write=False)

    def path(self, src: int, dst: int) -> list[int]:
        """Vertex sequence from ``src`` to ``dst`` (inclusive)."""
        if src == dst:
            return [src]
        if self.next_hop[src, dst] < 0:
            raise NoPath(f"vertex {dst} is unreachable from {src}")
        out = [src]
        while out[-1] != dst:
            out.append(int(self.next_hop[out[-1], dst]))
        return out


def all_pairs_shortest_paths(graph: CouplingGraph, mode: str = "undirected") -> DistanceMatrix:
    """Floyd-Warshall over the edge weights.

    ``mode="undirected"`` adds every edge's reverse with the same weight.
    Improvements are taken only when strictly shorter, which keeps the
    reconstructed paths deterministic.
    """
    if mode not in ("directed", "undirected"):
        raise ValueError(f"unknown mode {mode!r}")
    n = graph.num_qubits
    dist = np.full((n, n), INF)
    nxt = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0.0)
    for v in range(n):
        nxt[v, v] = v
    arcs = list(zip(graph.edges, graph.weights))
    if mode == "undirected":
        arcs += [((t, c), w) for (c, t), w in arcs]
    for (a, b), w in arcs:
        if w < dist[a, b]:
            dist[a, b] = w
            nxt[a, b] = b
    for k in range(n):
        for i in range(n):
            dik = dist[i, k]
            if dik == INF:
                continue
            for j in range(n):
                alt = dik + dist[k, j]
                if alt < dist[i, j]:
                    dist[i, j] = alt
                    nxt[i, j] = nxt[i, k]
    return DistanceMatrix(dist, nxt, mode == "directed")


def shortest_path_avoiding(
    graph: CouplingGraph, src: int, dst: int, avoid: int, directed: bool = False
) -> list[int]:
    """Dijkstra path from ``src`` to ``dst`` that never visits ``avoid``."""
    if src == avoid or dst == avoid:
        raise NoPath(f"path endpoint {avoid} is blocked")
    best = {src: 0.0}
    prev: dict[int, int] = {}
    heap = [(0.0, src)]
    done = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        if v == dst:
            break
        for u, w in sorted(graph.neighbors(v, directed)):
            if u == avoid or u in done:
                continue
            alt = d + w
            if alt < best.get(u, INF):
                best[u] = alt
                prev[u] = v
                heapq.heappush(heap, (alt, u))
    if dst not in done:
        raise NoPath(f"vertex {dst} is unreachable from {src} without crossing {avoid}")
    out = [dst]
    while out[-1] != src:
        out.append(prev[out[-1]])
    return out[::-1]


def supports(graph: CouplingGraph, control: int, target: int) -> Direction:
    if graph.has_edge(control, target):
        return Direction.DIRECT
    if graph.has_edge(target, control):
        return Direction.REVERSED
    return Direction.NONE


def expand_cnot(graph: CouplingGraph, control: int, target: int) -> list[Gate]:
    """Native gate sequence for CNOT(control, target) on hardware vertices.

    Against the edge direction the CNOT is conjugated by Hadamards on both
    wires, which adds four single-qubit gates.
    """
    direction = supports(graph, control, target)
    if direction is Direction.DIRECT:
        return [cnot(control, target)]
    if direction is Direction.REVERSED:
        return [h(control), h(target), cnot(target, control), h(control), h(target)]
    raise NoEdge(f"no coupling edge between {control} and {target}")


def path_weight(graph: CouplingGraph, path: Sequence[int], directed: bool = False) -> float:
    lookup = {}
    for (c, t), w in zip(graph.edges, graph.weights):
        lookup[(c, t)] = min(w, lookup.get((c, t), INF))
        if not directed:
            lookup[(t, c)] = min(w, lookup.get((t, c), INF))
    return sum(lookup[(a, b)] for a, b in zip(path, path[1:]))
