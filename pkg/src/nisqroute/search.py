"""Greedy and exact (backtracking) routing compilers."""
from __future__ import annotations

import itertools
import json
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .circuit import Circuit, Gate, GateKind, gate_weight, metrics, swap
from .coupling import CouplingGraph, DistanceMatrix, all_pairs_shortest_paths, expand_cnot
from .dag import build_dag, enumerate_cnot_orders, schedule
from .errors import AllUnreachable, NoPath, RoutingError, SearchExhausted
from .mapping import Configuration, RoutePlan, rank_edges, route_mi
from .qasm import parse_qasm, to_qasm

log = logging.getLogger(__name__)

DEFAULT_SWAP_WEIGHT = 3.0


@dataclass(frozen=True)
class SearchBudget:
    """Limits for :func:`compile_exact`; ``None`` means unlimited."""

    max_initial_configs: int | None = None
    max_cnot_orders: int | None = None
    max_nodes: int | None = None
    time_limit: float | None = None

    def __post_init__(self):
        for name in ("max_initial_configs", "max_cnot_orders", "max_nodes", "time_limit"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class Solution:
    compiled: Circuit
    added_swaps: int
    added_hadamards: int
    depth: int
    initial_config: Configuration
    final_config: Configuration
    cnot_order: tuple[int, ...]
    strategy: str
    swap_weight: float = DEFAULT_SWAP_WEIGHT
    incomplete: bool = False
    nodes: int = 0

    @property
    def cost(self) -> float:
        return self.swap_weight * self.added_swaps + self.added_hadamards

    @property
    def objective(self) -> tuple[float, int]:
        return (self.cost, self.depth)

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "num_qubits": self.compiled.num_qubits,
            "added_swaps": self.added_swaps,
            "added_hadamards": self.added_hadamards,
            "cost": self.cost,
            "swap_weight": self.swap_weight,
            "depth": self.depth,
            "initial_config": list(self.initial_config.to_hw),
            "final_config": list(self.final_config.to_hw),
            "cnot_order": list(self.cnot_order),
            "incomplete": self.incomplete,
            "compiled_qasm": to_qasm(self.compiled),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "Solution":
        return cls(
            compiled=parse_qasm(doc["compiled_qasm"]),
            added_swaps=int(doc["added_swaps"]),
            added_hadamards=int(doc["added_hadamards"]),
            depth=int(doc["depth"]),
            initial_config=Configuration(tuple(doc["initial_config"])),
            final_config=Configuration(tuple(doc["final_config"])),
            cnot_order=tuple(doc.get("cnot_order", ())),
            strategy=doc.get("strategy", "unknown"),
            swap_weight=float(doc.get("swap_weight", DEFAULT_SWAP_WEIGHT)),
            incomplete=bool(doc.get("incomplete", False)),
        )


def _prepare(circuit: Circuit, graph: CouplingGraph) -> Circuit:
    if circuit.num_qubits > graph.num_qubits:
        raise RoutingError(
            f"circuit uses {circuit.num_qubits} qubits but the device has {graph.num_qubits}"
        )
    return circuit.padded(graph.num_qubits)


def _emit_routed(gate: Gate, plan: RoutePlan, graph: CouplingGraph) -> list[Gate]:
    out = [swap(a, b) for a, b in plan.swaps[: plan.interact_at]]
    cfg_hw = plan.resulting_config.to_hw
    c, t = (cfg_hw[o] for o in gate.operands)
    if gate.kind is GateKind.CNOT:
        out.extend(expand_cnot(graph, c, t))
    else:
        out.append(swap(c, t))
    out.extend(swap(a, b) for a, b in plan.swaps[plan.interact_at:])
    return out


def _solution(
    original: Circuit,
    gates: list[Gate],
    initial: Configuration,
    final: Configuration,
    order: Sequence[int],
    strategy: str,
    swap_weight: float,
    expand_swap: bool,
    incomplete: bool = False,
    nodes: int = 0,
) -> Solution:
    compiled = original.with_gates(gates)
    before = metrics(original).counts
    after = metrics(compiled)
    added = {k: after.counts.get(k, 0) - before.get(k, 0) for k in ("SWAP", "H")}
    return Solution(
        compiled=compiled,
        added_swaps=added["SWAP"],
        added_hadamards=added["H"],
        depth=metrics(compiled, expand_swap).depth,
        initial_config=initial,
        final_config=final,
        cnot_order=tuple(order),
        strategy=strategy,
        swap_weight=swap_weight,
        incomplete=incomplete,
        nodes=nodes,
    )


def route_greedy_step(
    config: Configuration, gate: Gate, graph: CouplingGraph, dm: DistanceMatrix
) -> RoutePlan:
    """MI plan for one two-qubit gate on the best-ranked feasible edge.

    If moving the control first makes the chosen assignment impossible,
    the next candidates in the ranking are tried in turn.
    """
    c, t = gate.operands
    ranked = rank_edges(config, c, t, graph, dm)
    if not ranked:
        raise AllUnreachable(f"no coupling edge is reachable for qubits {c} and {t}")
    for choice in ranked:
        try:
            return route_mi(config, c, t, choice.endpoints, graph, dm, gate.kind is GateKind.CNOT)
        except NoPath:
            continue
    raise NoPath(f"no edge assignment can bring qubits {c} and {t} together")


def compile_greedy(
    circuit: Circuit,
    graph: CouplingGraph,
    initial: Configuration | None = None,
    swap_weight: float = DEFAULT_SWAP_WEIGHT,
    expand_swap: bool = False,
) -> Solution:
    """Single pass in program order, each two-qubit gate routed with MI."""
    circ = _prepare(circuit, graph)
    dm = all_pairs_shortest_paths(graph, "undirected")
    start = initial or Configuration.identity(graph.num_qubits)
    if start.size != graph.num_qubits:
        raise ValueError(f"initial configuration has size {start.size}, expected {graph.num_qubits}")
    cfg = start
    out: list[Gate] = []
    for g in circ.gates:
        if not g.is_two_qubit:
            out.append(g.remap(cfg.to_hw))
            continue
        plan = route_greedy_step(cfg, g, graph, dm)
        out.extend(_emit_routed(g, plan, graph))
        cfg = plan.resulting_config
    return _solution(
        circ, out, start, cfg, circ.cnot_indices, "greedy", swap_weight, expand_swap
    )


class _Stop(Exception):
    pass


@dataclass
class _Best:
    key: tuple[float, int] | None = None
    gates: list[Gate] = field(default_factory=list)
    initial: Configuration | None = None
    final: Configuration | None = None
    order: tuple[int, ...] = ()


def _candidates(
    cfg: Configuration, gate: Gate, graph: CouplingGraph, dm: DistanceMatrix, swap_weight: float
) -> list[RoutePlan]:
    """Feasible MI plans over all edges and both endpoint assignments, cheapest first."""
    c, t = gate.operands
    directed = gate.kind is GateKind.CNOT
    seen = set()
    plans = []
    for idx, (a, b) in enumerate(graph.edges):
        for pair in ((a, b), (b, a)):
            if pair in seen:
                continue
            seen.add(pair)
            try:
                plan = route_mi(cfg, c, t, pair, graph, dm, directed)
            except NoPath:
                continue
            plans.append((plan.cost(swap_weight), len(plans), plan))
    plans.sort(key=lambda item: item[:2])
    return [p for _, _, p in plans]


def initial_configurations(n: int, limit: int | None = None) -> tuple[list[Configuration], bool]:
    """Lexicographic permutations of ``range(n)``, at most ``limit``."""
    perms = itertools.permutations(range(n))
    if limit is None:
        return [Configuration(p) for p in perms], False
    out = [Configuration(p) for p in itertools.islice(perms, limit)]
    return out, limit < math.factorial(n)


def compile_exact(
    circuit: Circuit,
    graph: CouplingGraph,
    budget: SearchBudget | None = None,
    swap_weight: float = DEFAULT_SWAP_WEIGHT,
    expand_swap: bool = False,
    initial_configs: Iterable[Configuration] | None = None,
) -> Solution:
    """Backtracking over CNOT orders, initial configurations and per-gate edges.

    The best solution minimises ``(swap_weight * swaps + hadamards, depth)``;
    the first one found wins ties. The only pruning is against the best
    solution found so far, so with an unlimited budget the result is
    optimal for MI routing of one gate at a time.
    """
    budget = budget or SearchBudget()
    circ = _prepare(circuit, graph)
    n = graph.num_qubits
    dm = all_pairs_shortest_paths(graph, "undirected")
    dag = build_dag(circ)
    orders = enumerate_cnot_orders(dag, budget.max_cnot_orders)
    if initial_configs is None:
        configs, configs_cut = initial_configurations(n, budget.max_initial_configs)
    else:
        configs = list(initial_configs)
        if budget.max_initial_configs is not None:
            configs_cut = len(configs) > budget.max_initial_configs
            configs = configs[: budget.max_initial_configs]
        else:
            configs_cut = False
    if any(c.size != n for c in configs):
        raise ValueError(f"initial configurations must have size {n}")

    floor = (0.0, metrics(circ, expand_swap).depth)
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
    best = _Best()
    nodes = 0
    stopped = False
    plan_cache: dict[tuple, list[tuple[float, RoutePlan, tuple[Gate, ...]]]] = {}
    remap_cache: dict[tuple, tuple[Gate, ...]] = {}

    def candidates(cfg: Configuration, gate: Gate):
        key = (cfg.to_hw, gate)
        if key not in plan_cache:
            plan_cache[key] = [
                (plan.cost(swap_weight), plan, tuple(_emit_routed(gate, plan, graph)))
                for plan in _candidates(cfg, gate, graph, dm, swap_weight)
            ]
        return plan_cache[key]

    def remapped(singles: tuple[Gate, ...], cfg: Configuration) -> tuple[Gate, ...]:
        key = (singles, cfg.to_hw)
        if key not in remap_cache:
            remap_cache[key] = tuple(g.remap(cfg.to_hw) for g in singles)
        return remap_cache[key]

    def emit(gates: list[Gate], level: list[int], new: Iterable[Gate]) -> None:
        for g in new:
            gates.append(g)
            top = max(level[o] for o in g.operands) + gate_weight(g, expand_swap)
            for o in g.operands:
                level[o] = top

    def dominated(cost: float, partial_depth: int) -> bool:
        if best.key is None:
            return False
        return (cost, partial_depth) >= best.key

    def dfs(steps, pos: int, cfg: Configuration, cost: float, gates: list[Gate],
            level: list[int], initial: Configuration, order: tuple[int, ...]) -> None:
        nonlocal nodes
        if budget.max_nodes is not None and nodes >= budget.max_nodes:
            raise _Stop
        nodes += 1
        if deadline is not None and time.monotonic() > deadline:
            raise _Stop
        singles, gate = steps[pos]
        mark = len(gates)
        saved_level = level[:]
        emit(gates, level, remapped(singles, cfg))
        if gate is None:
            key = (cost, max(level, default=0))
            if best.key is None or key < best.key:
                best.key, best.gates = key, gates[:]
                best.initial, best.final, best.order = initial, cfg, order
                if key <= floor:
                    raise _Stop
        else:
            for plan_cost, plan, routed in candidates(cfg, gate):
                step_cost = cost + plan_cost
                inner_mark, inner_level = len(gates), level[:]
                emit(gates, level, routed)
                if not dominated(step_cost, max(level, default=0)):
                    dfs(steps, pos + 1, plan.resulting_config, step_cost, gates, level,
                        initial, order)
                del gates[inner_mark:]
                level[:] = inner_level
        del gates[mark:]
        level[:] = saved_level

    try:
        for order in orders:
            lin = [circ.gates[i] for i in schedule(dag, order)]
            steps: list[tuple[tuple[Gate, ...], Gate | None]] = []
            singles: list[Gate] = []
            for g in lin:
                if g.is_two_qubit:
                    steps.append((tuple(singles), g))
                    singles = []
                else:
                    singles.append(g)
            steps.append((tuple(singles), None))
            for cfg in configs:
                dfs(steps, 0, cfg, 0.0, [], [0] * n, cfg, order)
    except _Stop:
        stopped = best.key is None or best.key > floor

    incomplete = orders.truncated or configs_cut or stopped
    if best.key is None:
        if stopped:
            raise SearchExhausted("search budget exhausted before any solution was found")
        raise AllUnreachable("no initial configuration admits a routing")
    if incomplete:
        log.info("exact search incomplete after %d nodes", nodes)
    return _solution(
        circ, best.gates, best.initial, best.final, best.order, "exact",
        swap_weight, expand_swap, incomplete, nodes,
    )


def search_space_size(q: int, n: int, v: int) -> int:
    """``2n * q! * v**n * n!`` in exact integer arithmetic."""
    if q < 1 or n < 0 or v < 1:
        raise ValueError("need q >= 1, n >= 0, v >= 1")
    return 2 * n * math.factorial(q) * v**n * math.factorial(n)
