"""Configurations (qubit placements), MI/MIM routing and edge selection."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coupling import (
    INF,
    CouplingGraph,
    Direction,
    DistanceMatrix,
    shortest_path_avoiding,
    supports,
)
from .errors import AllUnreachable, NoEdge


@dataclass(frozen=True)
class Configuration:
    """Bijection between circuit qubits and hardware vertices.

    ``to_hw[qubit]`` is the vertex holding that qubit; ``to_circ[vertex]``
    is the inverse (the wire-to-qubit reading).
    """

    to_hw: tuple[int, ...]

    def __post_init__(self):
        to_hw = tuple(int(v) for v in self.to_hw)
        if sorted(to_hw) != list(range(len(to_hw))):
            raise ValueError(f"{to_hw} is not a permutation of 0..{len(to_hw) - 1}")
        inv = [0] * len(to_hw)
        for qubit, vertex in enumerate(to_hw):
            inv[vertex] = qubit
        object.__setattr__(self, "to_hw", to_hw)
        object.__setattr__(self, "_to_circ", tuple(inv))

    @property
    def to_circ(self) -> tuple[int, ...]:
        return self._to_circ

    @property
    def size(self) -> int:
        return len(self.to_hw)

    @classmethod
    def identity(cls, n: int) -> "Configuration":
        return cls(tuple(range(n)))

    @classmethod
    def from_to_circ(cls, to_circ: Sequence[int]) -> "Configuration":
        return cls(Configuration(tuple(to_circ)).to_circ)

    def loc(self, qubit: int) -> int:
        return self.to_hw[qubit]

    def apply_swap(self, hw_a: int, hw_b: int) -> "Configuration":
        return apply_swap(self, hw_a, hw_b)

    def apply_swaps(self, swaps: Sequence[tuple[int, int]]) -> "Configuration":
        circ = list(self.to_circ)
        for a, b in swaps:
            circ[a], circ[b] = circ[b], circ[a]
        return Configuration.from_to_circ(circ)


def apply_swap(config: Configuration, hw_a: int, hw_b: int) -> Configuration:
    """Exchange the qubits sitting on vertices ``hw_a`` and ``hw_b``."""
    if hw_a == hw_b:
        raise ValueError("a SWAP needs two distinct vertices")
    to_hw = list(config.to_hw)
    qa, qb = config.to_circ[hw_a], config.to_circ[hw_b]
    to_hw[qa], to_hw[qb] = hw_b, hw_a
    return Configuration(tuple(to_hw))


def is_remote(config: Configuration, control: int, target: int, graph: CouplingGraph) -> bool:
    if control == target:
        raise ValueError("control and target must differ")
    return not graph.adjacent(config.loc(control), config.loc(target))


@dataclass(frozen=True)
class RoutePlan:
    swaps: tuple[tuple[int, int], ...]
    added_hadamards: int
    final_edge: tuple[int, int]
    direction: Direction
    resulting_config: Configuration
    # the interaction happens after swaps[:interact_at]
    interact_at: int

    @property
    def swap_count(self) -> int:
        return len(self.swaps)

    def cost(self, swap_weight: float = 3.0) -> float:
        return swap_weight * len(self.swaps) + self.added_hadamards


def _moves(path: list[int]) -> list[tuple[int, int]]:
    return list(zip(path, path[1:]))


def route_mi(
    config: Configuration,
    control: int,
    target: int,
    edge: tuple[int, int],
    graph: CouplingGraph,
    dm: DistanceMatrix,
    directed_gate: bool = True,
) -> RoutePlan:
    """Move-interact: bring ``control`` to ``edge[0]`` and ``target`` to ``edge[1]``.

    The control state travels first along the shortest path from the
    distance matrix. The target then travels along a shortest path that
    avoids the control's new vertex. The configuration is left as moved.
    ``edge`` is an endpoint assignment; either orientation of a coupling
    edge is accepted, the direction is resolved afterwards.
    """
    a, b = edge
    if control == target:
        raise ValueError("control and target must differ")
    if not graph.adjacent(a, b):
        raise NoEdge(f"({a},{b}) is not a coupling edge")
    swaps: list[tuple[int, int]] = []
    cfg = config
    for u, v in _moves(dm.path(cfg.loc(control), a)):
        swaps.append((u, v))
        cfg = apply_swap(cfg, u, v)
    t_loc = cfg.loc(target)
    if t_loc != b:
        for u, v in _moves(shortest_path_avoiding(graph, t_loc, b, a, dm.directed)):
            swaps.append((u, v))
            cfg = apply_swap(cfg, u, v)
    if directed_gate:
        direction = supports(graph, a, b)
        final_edge = (a, b) if direction is Direction.DIRECT else (b, a)
    else:
        direction = Direction.DIRECT
        final_edge = (a, b) if graph.has_edge(a, b) else (b, a)
    hadamards = 4 if direction is Direction.REVERSED else 0
    return RoutePlan(tuple(swaps), hadamards, final_edge, direction, cfg, len(swaps))


def route_mim(
    config: Configuration,
    control: int,
    target: int,
    edge: tuple[int, int],
    graph: CouplingGraph,
    dm: DistanceMatrix,
    directed_gate: bool = True,
) -> RoutePlan:
    """Move-interact-move: the MI swaps, the interaction, then the swaps undone."""
    mi = route_mi(config, control, target, edge, graph, dm, directed_gate)
    swaps = mi.swaps + tuple(reversed(mi.swaps))
    return RoutePlan(swaps, mi.added_hadamards, mi.final_edge, mi.direction, config, len(mi.swaps))


@dataclass(frozen=True)
class EdgeChoice:
    """A coupling edge plus which endpoint the control and target go to."""

    edge: tuple[int, int]
    index: int
    control_at: int
    target_at: int
    cost: float

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.control_at, self.target_at)


def rank_edges(
    config: Configuration, control: int, target: int, graph: CouplingGraph, dm: DistanceMatrix
) -> list[EdgeChoice]:
    """Every (edge, endpoint assignment) pair with finite cost, best first.

    Cost is the distance sum from the qubits' vertices to the assigned
    endpoints. Equal costs favour the later edge in the list, then the
    assignment matching the edge direction.
    """
    c, t = config.loc(control), config.loc(target)
    d = dm.dist
    scored = []
    for idx, (a, b) in enumerate(graph.edges):
        for flip, (ca, tb) in enumerate(((a, b), (b, a))):
            cost = float(d[c, ca] + d[t, tb])
            if cost < INF:
                scored.append(((cost, -idx, flip), EdgeChoice((a, b), idx, ca, tb, cost)))
    scored.sort(key=lambda item: item[0])
    return [choice for _, choice in scored]


def select_best_edge(
    config: Configuration, control: int, target: int, graph: CouplingGraph, dm: DistanceMatrix
) -> EdgeChoice:
    if not graph.edges:
        raise ValueError("coupling graph has no edges")
    ranked = rank_edges(config, control, target, graph, dm)
    if not ranked:
        raise AllUnreachable(f"no coupling edge is reachable for qubits {control} and {target}")
    return ranked[0]
