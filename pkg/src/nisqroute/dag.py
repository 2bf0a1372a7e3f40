"""Wire-dependency DAG, CNOT orders and CNOT-chains.

Gate indices always refer to positions in the source :class:`Circuit`.
Program order is a linearization of the DAG, so ``i -> j`` edges always
have ``i < j``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterator, Sequence

from .circuit import Circuit, GateKind


@dataclass(frozen=True)
class CircuitDag:
    circuit: Circuit
    edges: tuple[tuple[int, int], ...]
    preds: tuple[tuple[int, ...], ...]
    succs: tuple[tuple[int, ...], ...]
    # bitmask of CNOT gate indices that must precede each gate
    cnot_ancestors: tuple[int, ...]

    @property
    def nodes(self) -> range:
        return range(len(self.circuit.gates))

    @property
    def cnots(self) -> tuple[int, ...]:
        return self.circuit.cnot_indices

    def wire_sequence(self, wire: int) -> list[int]:
        return [i for i, g in enumerate(self.circuit.gates) if wire in g.operands]

    def must_precede(self, a: int, b: int) -> bool:
        """True if CNOT ``a`` is an ancestor of gate ``b``."""
        return bool(self.cnot_ancestors[b] >> a & 1)


def build_dag(circuit: Circuit) -> CircuitDag:
    n = len(circuit.gates)
    last_on_wire: dict[int, int] = {}
    preds: list[list[int]] = [[] for _ in range(n)]
    succs: list[list[int]] = [[] for _ in range(n)]
    edges = []
    for j, g in enumerate(circuit.gates):
        for w in g.operands:
            i = last_on_wire.get(w)
            if i is not None and i not in preds[j]:
                preds[j].append(i)
                succs[i].append(j)
                edges.append((i, j))
            last_on_wire[w] = j

    cnot_mask = 0
    for i in circuit.cnot_indices:
        cnot_mask |= 1 << i
    ancestors = [0] * n
    for j in range(n):
        acc = 0
        for i in preds[j]:
            acc |= ancestors[i] | (1 << i)
        ancestors[j] = acc
    return CircuitDag(
        circuit,
        tuple(sorted(edges)),
        tuple(tuple(sorted(p)) for p in preds),
        tuple(tuple(sorted(s)) for s in succs),
        tuple(a & cnot_mask for a in ancestors),
    )


def is_valid_cnot_order(dag: CircuitDag, order: Sequence[int]) -> bool:
    if sorted(order) != list(dag.cnots):
        return False
    placed = 0
    for c in order:
        if dag.cnot_ancestors[c] & ~placed:
            return False
        placed |= 1 << c
    return True


def iter_cnot_orders(dag: CircuitDag) -> Iterator[tuple[int, ...]]:
    """Yield every linear extension of the CNOT precedence relation.

    At each choice point the smallest available gate index is taken first,
    so the first order yielded is the program order.
    """
    cnots = dag.cnots
    n = len(cnots)
    if n == 0:
        yield ()
        return

    def available(placed: int) -> list[int]:
        return [
            c for c in cnots
            if not placed >> c & 1 and not dag.cnot_ancestors[c] & ~placed
        ]

    order: list[int] = []
    placed = 0
    stack = [[available(0), 0]]
    while stack:
        frame = stack[-1]
        cands, k = frame
        if k < len(cands):
            frame[1] = k + 1
            c = cands[k]
            order.append(c)
            placed |= 1 << c
            if len(order) == n:
                yield tuple(order)
                order.pop()
                placed &= ~(1 << c)
            else:
                stack.append([available(placed), 0])
        else:
            stack.pop()
            if order:
                placed &= ~(1 << order.pop())


@dataclass(frozen=True)
class CnotOrders:
    orders: tuple[tuple[int, ...], ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self):
        return iter(self.orders)


def enumerate_cnot_orders(dag: CircuitDag, limit: int | None = None) -> CnotOrders:
    """Up to ``limit`` CNOT orders (``None`` means all) and a truncation flag."""
    if limit is not None and limit < 1:
        raise ValueError("limit must be at least 1")
    orders = []
    it = iter_cnot_orders(dag)
    for order in it:
        if limit is not None and len(orders) == limit:
            return CnotOrders(tuple(orders), True)
        orders.append(order)
    return CnotOrders(tuple(orders), False)


def schedule(dag: CircuitDag, order: Sequence[int]) -> tuple[int, ...]:
    """Full gate linearization that places CNOTs in ``order``.

    Among ready gates the lowest program index goes first, except that a
    CNOT waits for its turn in ``order``. The CNOT program order therefore
    reproduces the program itself.
    """
    if not is_valid_cnot_order(dag, order):
        raise ValueError(f"{list(order)} is not a valid CNOT order")
    gates = dag.circuit.gates
    remaining = [len(p) for p in dag.preds]
    heap = [i for i, r in enumerate(remaining) if r == 0]
    heapq.heapify(heap)
    deferred: set[int] = set()
    out: list[int] = []
    k = 0
    while heap:
        i = heapq.heappop(heap)
        if gates[i].kind is GateKind.CNOT:
            if i != order[k]:
                deferred.add(i)
                continue
            k += 1
            if k < len(order) and order[k] in deferred:
                deferred.discard(order[k])
                heapq.heappush(heap, order[k])
        out.append(i)
        for j in dag.succs[i]:
            remaining[j] -= 1
            if remaining[j] == 0:
                heapq.heappush(heap, j)
    assert len(out) == len(gates), "schedule did not cover every gate"
    return tuple(out)


@dataclass(frozen=True)
class CnotChain:
    vertices: tuple[int, ...]
    weights: tuple[int, ...]
    cnot_index: tuple[int, ...]

    @property
    def num_cnots(self) -> int:
        return sum(self.weights)


def build_cnot_chain(dag: CircuitDag, order: Sequence[int]) -> CnotChain:
    """Linear CNOT-chain for ``order``.

    A CNOT contributes its target vertex, preceded by a control vertex unless
    the control is the previous CNOT's target. CNOT edges weigh 1; the edge
    joining a previous target to a fresh control weighs 0.
    """
    if not is_valid_cnot_order(dag, order):
        raise ValueError(f"{list(order)} is not a topological order of the CNOT sub-DAG")
    vertices: list[int] = []
    weights: list[int] = []
    cnot_index: list[int] = []
    prev_target: int | None = None
    for pos, gi in enumerate(order):
        control, target = dag.circuit.gates[gi].operands
        if prev_target is None:
            vertices.append(control)
        elif control != prev_target:
            vertices.append(control)
            weights.append(0)
        vertices.append(target)
        weights.append(1)
        cnot_index.append(pos)
        prev_target = target
    return CnotChain(tuple(vertices), tuple(weights), tuple(cnot_index))
