"""Gate and circuit value types plus simple gate-count/depth metrics."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class GateKind(Enum):
    H = "h"
    T = "t"
    TDG = "tdg"
    S = "s"
    SDG = "sdg"
    X = "x"
    Z = "z"
    CNOT = "cx"
    SWAP = "swap"

    @property
    def arity(self) -> int:
        return 2 if self in (GateKind.CNOT, GateKind.SWAP) else 1

    @property
    def qasm_name(self) -> str:
        return self.value


@dataclass(frozen=True)
class Gate:
    """A gate applied to wire indices.

    CNOT operands are ``(control, target)``; SWAP operands are unordered.
    """

    kind: GateKind
    operands: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(int(o) for o in self.operands))
        if len(self.operands) != self.kind.arity:
            raise ValueError(
                f"{self.kind.name} takes {self.kind.arity} operand(s), got {len(self.operands)}"
            )
        if len(set(self.operands)) != len(self.operands):
            raise ValueError(f"{self.kind.name} operands must be distinct: {self.operands}")
        if any(o < 0 for o in self.operands):
            raise ValueError(f"negative wire index in {self.operands}")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind.arity == 2

    def remap(self, wire_map: Sequence[int]) -> "Gate":
        return Gate(self.kind, tuple(wire_map[o] for o in self.operands))

    def __str__(self) -> str:
        return f"{self.kind.name}({','.join(map(str, self.operands))})"


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def swap(a: int, b: int) -> Gate:
    return Gate(GateKind.SWAP, (a, b))


def h(wire: int) -> Gate:
    return Gate(GateKind.H, (wire,))


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 1:
            raise ValueError("a circuit needs at least one qubit")
        for i, g in enumerate(self.gates):
            if max(g.operands) >= self.num_qubits:
                raise ValueError(
                    f"gate {i} ({g}) addresses a wire outside [0, {self.num_qubits})"
                )

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    @property
    def cnot_indices(self) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.gates) if g.kind is GateKind.CNOT)

    def padded(self, num_qubits: int) -> "Circuit":
        """Same gates on a wider register (extra wires stay idle)."""
        if num_qubits < self.num_qubits:
            raise ValueError(f"cannot shrink a {self.num_qubits}-qubit circuit to {num_qubits}")
        return Circuit(num_qubits, self.gates)

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.num_qubits, tuple(gates))


@dataclass(frozen=True)
class Metrics:
    counts: dict[str, int]
    total: int
    depth: int

    def to_dict(self) -> dict:
        return {"counts": dict(sorted(self.counts.items())), "total": self.total, "depth": self.depth}


def gate_weight(gate: Gate, expand_swap: bool = False) -> int:
    """Layers a gate occupies; a SWAP is three CNOTs when expanded."""
    return 3 if expand_swap and gate.kind is GateKind.SWAP else 1


def metrics(circuit: Circuit, expand_swap: bool = False) -> Metrics:
    counts: Counter[str] = Counter()
    level = [0] * circuit.num_qubits
    for g in circuit.gates:
        w = gate_weight(g, expand_swap)
        if expand_swap and g.kind is GateKind.SWAP:
            counts[GateKind.CNOT.name] += 3
        else:
            counts[g.kind.name] += 1
        top = max(level[o] for o in g.operands) + w
        for o in g.operands:
            level[o] = top
    return Metrics(dict(counts), sum(counts.values()), max(level, default=0))


def depth(circuit: Circuit, expand_swap: bool = False) -> int:
    return metrics(circuit, expand_swap).depth
