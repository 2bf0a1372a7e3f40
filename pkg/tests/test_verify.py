import random

import numpy as np
import pytest

from nisqroute import Circuit, Configuration, CouplingGraph, Gate, GateKind, simulate, structural_check
from nisqroute.circuit import cnot, h, swap
from nisqroute.search import Solution
from nisqroute.verify import basis_state, relabel, semantic_check, unitary

from oracles import cnot_matrix


def _solution(compiled, init=None, final=None):
    n = compiled.num_qubits
    return Solution(
        compiled=compiled,
        added_swaps=0,
        added_hadamards=0,
        depth=0,
        initial_config=init or Configuration.identity(n),
        final_config=final or Configuration.identity(n),
        cnot_order=(),
        strategy="test",
    )


def test_native_gate_passes():
    assert structural_check(Circuit(2, (cnot(1, 0),)), CouplingGraph(2, ((1, 0),))).passed


def test_direction_violation():
    report = structural_check(Circuit(2, (cnot(0, 1),)), CouplingGraph(2, ((1, 0),)))
    assert not report.passed
    assert report.violations[0].index == 0
    assert report.violations[0].reason == "direction violation"


def test_remote_cnot():
    report = structural_check(Circuit(3, (cnot(0, 2),)), CouplingGraph.line(3))
    assert [v.reason for v in report.violations] == ["remote CNOT"]


def test_swap_either_direction():
    g = CouplingGraph.line(3)
    assert structural_check(Circuit(3, (swap(1, 0), swap(1, 2))), g).passed
    assert not structural_check(Circuit(3, (swap(0, 2),)), g).passed


def test_hadamard_on_zero():
    out = simulate(Circuit(1, (h(0),)), basis_state(1, 0))
    np.testing.assert_allclose(out, [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-15)


def test_hadamard_involution():
    rng = np.random.default_rng(0)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    out = simulate(Circuit(3, (h(1), h(1))), psi)
    np.testing.assert_allclose(out, psi, atol=1e-14)


def test_reversal_truth_table():
    seq = Circuit(2, (h(0), h(1), cnot(1, 0), h(0), h(1)))
    for x in range(4):
        out = simulate(seq, basis_state(2, x))
        expected = x ^ 2 if x & 1 else x
        np.testing.assert_allclose(np.abs(out), np.eye(4)[expected], atol=1e-12)
    np.testing.assert_allclose(unitary(seq), cnot_matrix(0, 1, 2), atol=1e-12)


def test_bit_convention():
    # X on wire 0 flips the least significant bit
    out = simulate(Circuit(3, (Gate(GateKind.X, (0,)),)), basis_state(3, 0))
    assert out[1] == 1
    out = simulate(Circuit(3, (Gate(GateKind.X, (2,)), cnot(2, 1))), basis_state(3, 0))
    assert out[0b110] == 1


def test_phase_gates():
    t = Gate(GateKind.T, (0,))
    tdg = Gate(GateKind.TDG, (0,))
    s = Gate(GateKind.S, (0,))
    u = unitary(Circuit(1, (t, t)))
    np.testing.assert_allclose(u, unitary(Circuit(1, (s,))), atol=1e-14)
    np.testing.assert_allclose(unitary(Circuit(1, (t, tdg))), np.eye(2), atol=1e-14)
    zz = unitary(Circuit(1, (s, s)))
    np.testing.assert_allclose(zz, unitary(Circuit(1, (Gate(GateKind.Z, (0,)),))), atol=1e-14)


def _random_circuit(rng, n, length):
    gates = []
    for _ in range(length):
        kind = rng.choice(list(GateKind))
        gates.append(Gate(kind, tuple(rng.sample(range(n), kind.arity))))
    return Circuit(n, tuple(gates))


def test_norm_preserved():
    rng = random.Random(1)
    nprng = np.random.default_rng(1)
    for _ in range(50):
        n = rng.randint(1, 6)
        c = _random_circuit(rng, n, 20) if n > 1 else Circuit(1, (h(0),))
        psi = nprng.normal(size=2**n) + 1j * nprng.normal(size=2**n)
        psi /= np.linalg.norm(psi)
        assert abs(np.linalg.norm(simulate(c, psi)) - 1) < 1e-10


def test_unitarity():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randint(2, 3)
        u = unitary(_random_circuit(rng, n, 15))
        np.testing.assert_allclose(u.conj().T @ u, np.eye(2**n), atol=1e-9)


def test_qubit_guard():
    with pytest.raises(ValueError, match="limited"):
        simulate(Circuit(13, ()), basis_state(1, 0))


def test_unnormalised_input_rejected():
    with pytest.raises(ValueError):
        simulate(Circuit(1, ()), np.array([1.0, 1.0]))


def test_relabel_moves_qubits():
    # qubit 0 carries |1>, placed on wire 2
    state = basis_state(3, 0b001)[:, None]
    out = relabel(state, (2, 0, 1))
    assert out[0b100, 0] == 1


def test_identity_compilation_passes():
    c = Circuit(3, (h(0), cnot(0, 1), cnot(1, 2)))
    assert semantic_check(c, _solution(c)).passed


def test_reversal_solution_passes():
    original = Circuit(2, (cnot(0, 1),))
    compiled = Circuit(2, (h(0), h(1), cnot(1, 0), h(0), h(1)))
    report = semantic_check(original, _solution(compiled))
    assert report.passed and report.max_amplitude_error < 1e-12


def test_swap_needs_final_config():
    original = Circuit(3, (cnot(0, 2),))
    compiled = Circuit(3, (swap(0, 1), cnot(1, 2)))
    assert not semantic_check(original, _solution(compiled)).passed
    moved = Configuration((1, 0, 2))
    assert semantic_check(original, _solution(compiled, final=moved)).passed


def test_missing_swap_is_caught():
    original = Circuit(3, (cnot(0, 2), h(0)))
    compiled = Circuit(3, (swap(0, 1), cnot(1, 2), h(1)))
    moved = Configuration((1, 0, 2))
    assert semantic_check(original, _solution(compiled, final=moved)).passed
    broken = Circuit(3, (cnot(1, 2), h(1)))
    assert not semantic_check(original, _solution(broken, final=moved)).passed


def test_symmetry_under_inverse_permutation():
    rng = random.Random(5)
    for _ in range(20):
        original = _random_circuit(rng, 4, 10)
        init = Configuration(tuple(rng.sample(range(4), 4)))
        # build a compiled circuit by relabelling wires through init, then add swaps
        body = [g.remap(init.to_hw) for g in original.gates]
        final = init
        for _ in range(3):
            a, b = rng.sample(range(4), 2)
            body.append(swap(a, b))
            final = final.apply_swap(a, b)
        compiled = Circuit(4, tuple(body))
        forward = semantic_check(original, _solution(compiled, init, final))
        inv = lambda cfg: Configuration(cfg.to_circ)  # noqa: E731
        backward = semantic_check(compiled, _solution(original, inv(init), inv(final)))
        assert forward.passed and backward.passed
        assert forward.max_amplitude_error == pytest.approx(backward.max_amplitude_error, abs=1e-12)


def test_chunking_does_not_change_result():
    rng = random.Random(9)
    original = _random_circuit(rng, 5, 12)
    sol = _solution(original)
    assert semantic_check(original, sol, chunk=3).max_amplitude_error == pytest.approx(
        semantic_check(original, sol).max_amplitude_error, abs=1e-15
    )
