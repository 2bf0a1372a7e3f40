"""Independent checks for compiled circuits.

Amplitude index bit ``w`` is the value of wire ``w`` (wire 0 is the least
significant bit).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circuit import Circuit, GateKind
from .coupling import CouplingGraph

MAX_SIM_QUBITS = 12
NORM_TOL = 1e-10
AMPLITUDE_TOL = 1e-9

_S2 = 1 / np.sqrt(2)
_MATRICES = {
    GateKind.H: np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, np.exp(-1j * np.pi / 4)]], dtype=complex),
}


def basis_state(num_qubits: int, index: int) -> np.ndarray:
    state = np.zeros(2**num_qubits, dtype=complex)
    state[index] = 1.0
    return state


def _guard(num_qubits: int) -> None:
    if num_qubits > MAX_SIM_QUBITS:
        raise ValueError(f"simulation is limited to {MAX_SIM_QUBITS} qubits, got {num_qubits}")


def _run(circuit: Circuit, tensor: np.ndarray) -> np.ndarray:
    # tensor has shape (2,)*n + (batch,); wire w lives on axis n-1-w
    n = circuit.num_qubits
    for g in circuit.gates:
        if g.kind is GateKind.CNOT:
            c, t = (n - 1 - o for o in g.operands)
            idx0 = [slice(None)] * tensor.ndim
            idx1 = [slice(None)] * tensor.ndim
            idx0[c] = idx1[c] = 1
            idx0[t], idx1[t] = 0, 1
            tensor = tensor.copy()
            tensor[tuple(idx0)], tensor[tuple(idx1)] = (
                tensor[tuple(idx1)].copy(),
                tensor[tuple(idx0)].copy(),
            )
        elif g.kind is GateKind.SWAP:
            a, b = (n - 1 - o for o in g.operands)
            tensor = np.swapaxes(tensor, a, b)
        else:
            ax = n - 1 - g.operands[0]
            tensor = np.moveaxis(np.tensordot(_MATRICES[g.kind], tensor, axes=(1, ax)), 0, ax)
    return tensor


def simulate(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    """Apply ``circuit`` to a state vector, or to the columns of a ``(2**n, k)`` batch."""
    n = circuit.num_qubits
    _guard(n)
    state = np.asarray(state, dtype=complex)
    if state.shape[0] != 2**n:
        raise ValueError(f"state has {state.shape[0]} amplitudes, expected {2**n}")
    single = state.ndim == 1
    if single and abs(np.linalg.norm(state) - 1.0) > NORM_TOL:
        raise ValueError("input state is not normalised")
    batch = state.reshape((2,) * n + (-1,))
    out = _run(circuit, batch).reshape(2**n, -1)
    return np.ascontiguousarray(out[:, 0] if single else out)


def unitary(circuit: Circuit) -> np.ndarray:
    return simulate(circuit, np.eye(2**circuit.num_qubits, dtype=complex))


def relabel(states: np.ndarray, to_hw: Sequence[int]) -> np.ndarray:
    """Move logical qubit ``i`` onto wire ``to_hw[i]`` for a batch of states."""
    n = len(to_hw)
    to_circ = [0] * n
    for qubit, wire in enumerate(to_hw):
        to_circ[wire] = qubit
    tensor = states.reshape((2,) * n + (-1,))
    order = [n - 1 - to_circ[n - 1 - r] for r in range(n)] + [n]
    return np.transpose(tensor, order).reshape(2**n, -1)


@dataclass
class Violation:
    index: int
    gate: str
    reason: str

    def to_dict(self) -> dict:
        return {"index": self.index, "gate": self.gate, "reason": self.reason}


@dataclass
class StructuralReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"passed": self.passed, "violations": [v.to_dict() for v in self.violations]}


def structural_check(compiled: Circuit, graph: CouplingGraph) -> StructuralReport:
    report = StructuralReport()
    if compiled.num_qubits > graph.num_qubits:
        report.violations.append(
            Violation(-1, "", f"{compiled.num_qubits} wires on a {graph.num_qubits}-vertex graph")
        )
        return report
    for i, g in enumerate(compiled.gates):
        if g.kind is GateKind.CNOT:
            c, t = g.operands
            if graph.has_edge(c, t):
                continue
            reason = "direction violation" if graph.has_edge(t, c) else "remote CNOT"
            report.violations.append(Violation(i, str(g), reason))
        elif g.kind is GateKind.SWAP and not graph.adjacent(*g.operands):
            report.violations.append(Violation(i, str(g), "remote SWAP"))
    return report


@dataclass
class SemanticReport:
    max_amplitude_error: float
    tolerance: float = AMPLITUDE_TOL

    @property
    def passed(self) -> bool:
        return self.max_amplitude_error < self.tolerance

    def to_dict(self) -> dict:
        return {"passed": self.passed, "max_amplitude_error": self.max_amplitude_error}


def semantic_check(original: Circuit, solution, chunk: int = 256) -> SemanticReport:
    """Compare ``solution.compiled`` with ``original`` on every basis state.

    Input qubit ``i`` starts on wire ``initial_config.to_hw[i]`` and must end
    on ``final_config.to_hw[i]``. No global phase is allowed for.
    """
    compiled = solution.compiled
    n = compiled.num_qubits
    _guard(n)
    if original.num_qubits > n:
        raise ValueError("compiled circuit is narrower than the original")
    original = original.padded(n)
    init, final = solution.initial_config, solution.final_config
    if init.size != n or final.size != n:
        raise ValueError("configuration size does not match the compiled circuit")
    dim = 2**n
    worst = 0.0
    for start in range(0, dim, chunk):
        cols = np.zeros((dim, min(chunk, dim - start)), dtype=complex)
        cols[np.arange(start, start + cols.shape[1]), np.arange(cols.shape[1])] = 1.0
        expected = relabel(simulate(original, cols), final.to_hw)
        actual = simulate(compiled, relabel(cols, init.to_hw))
        worst = max(worst, float(np.max(np.abs(actual - expected))))
    return SemanticReport(worst)


def verification_report(original: Circuit, solution, graph: CouplingGraph) -> dict:
    return {
        "structural": structural_check(solution.compiled, graph).to_dict(),
        "semantic": semantic_check(original, solution).to_dict(),
    }
