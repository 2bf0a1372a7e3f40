import itertools
import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from nisqroute import (
    AllUnreachable,
    Circuit,
    Configuration,
    CouplingGraph,
    GateKind,
    SearchExhausted,
    parse_coupling,
    parse_qasm,
    semantic_check,
    structural_check,
)
from nisqroute.circuit import Gate, cnot, h, swap
from nisqroute.search import (
    SearchBudget,
    Solution,
    compile_exact,
    compile_greedy,
    initial_configurations,
    search_space_size,
)

from oracles import brute_force_optimum, random_connected_graph


def _sound(original, sol, graph):
    assert structural_check(sol.compiled, graph).passed
    assert semantic_check(original, sol).passed


def test_greedy_conformant_adds_nothing(fixtures, line3):
    circuit = parse_qasm((fixtures / "conformant.qasm").read_text())
    sol = compile_greedy(circuit, line3)
    assert (sol.added_swaps, sol.added_hadamards) == (0, 0)
    assert sol.compiled == circuit


def test_greedy_reversed_edge(reversed2):
    sol = compile_greedy(Circuit(2, (cnot(0, 1),)), reversed2)
    assert (sol.added_swaps, sol.added_hadamards, sol.depth) == (0, 4, 3)
    assert sol.cost == 4


def test_greedy_remote_on_line(line5):
    sol = compile_greedy(Circuit(5, (cnot(0, 4),)), line5)
    assert sol.compiled.gates == (swap(0, 1), swap(1, 2), swap(2, 3), cnot(3, 4))
    assert sol.final_config.to_circ == (1, 2, 3, 0, 4)
    _sound(Circuit(5, (cnot(0, 4),)), sol, line5)


def test_greedy_pads_narrow_circuit(line5):
    sol = compile_greedy(Circuit(2, (cnot(0, 1),)), line5)
    assert sol.compiled.num_qubits == 5


def test_greedy_rejects_wide_circuit(line3):
    from nisqroute import RoutingError

    with pytest.raises(RoutingError):
        compile_greedy(Circuit(4, ()), line3)


def test_disconnected_device_is_unreachable():
    g = CouplingGraph(4, ((0, 1), (2, 3)))
    with pytest.raises(AllUnreachable):
        compile_greedy(Circuit(4, (cnot(0, 2),)), g)
    # exact can place the pair on one component
    sol = compile_exact(Circuit(4, (cnot(0, 2),)), g)
    assert sol.cost == 0


def test_exact_reversed_finds_native_placement(reversed2):
    sol = compile_exact(Circuit(2, (cnot(0, 1),)), reversed2)
    assert sol.cost == 0
    assert sol.initial_config.to_hw == (1, 0)
    _sound(Circuit(2, (cnot(0, 1),)), sol, reversed2)


def test_exact_fixed_placement_weighs_swap_against_hadamards(reversed2):
    circuit = Circuit(2, (cnot(0, 1),))
    ident = [Configuration.identity(2)]
    # one swap (3) undercuts four hadamards (4) at the default weight
    assert (compile_exact(circuit, reversed2, initial_configs=ident).added_swaps,) == (1,)
    heavy = compile_exact(circuit, reversed2, swap_weight=5.0, initial_configs=ident)
    assert (heavy.added_swaps, heavy.added_hadamards) == (0, 4)


def test_exact_remote_example(fixtures):
    circuit = parse_qasm((fixtures / "two_cnots.qasm").read_text())
    g = parse_coupling((fixtures / "line3.json").read_text())
    sol = compile_exact(circuit, g)
    assert not sol.incomplete
    assert sol.objective <= compile_greedy(circuit, g).objective
    _sound(circuit, sol, g)


def test_exact_matches_brute_force_small():
    g = CouplingGraph.line(3)
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if a == b or c == d:
            continue
        circuit = Circuit(3, (cnot(a, b), cnot(c, d)))
        sol = compile_exact(circuit, g)
        assert sol.objective == brute_force_optimum(circuit, g)


def test_exact_on_weighted_device(fixtures):
    g = parse_coupling((fixtures / "weighted4.json").read_text())
    circuit = Circuit(4, (cnot(0, 2), cnot(1, 3), cnot(3, 0)))
    sol = compile_exact(circuit, g)
    assert sol.objective <= compile_greedy(circuit, g).objective
    _sound(circuit, sol, g)


def test_cost_uses_swap_weight():
    circuit = Circuit(3, (cnot(0, 2),))
    g = CouplingGraph.line(3)
    cheap = compile_exact(circuit, g, swap_weight=0.5, initial_configs=[Configuration.identity(3)])
    assert cheap.cost == 0.5 * cheap.added_swaps + cheap.added_hadamards


def test_input_swaps_are_routed(fixtures):
    circuit = parse_qasm((fixtures / "mixed4.qasm").read_text())
    g = CouplingGraph.line(4)
    for sol in (compile_greedy(circuit, g), compile_exact(circuit, g, SearchBudget(max_nodes=20000))):
        _sound(circuit, sol, g)
        swaps = sum(1 for x in sol.compiled.gates if x.kind is GateKind.SWAP)
        assert swaps == sol.added_swaps + 1


def test_single_qubit_only_circuit(line3):
    circuit = Circuit(3, (h(0), Gate(GateKind.T, (2,))))
    sol = compile_exact(circuit, line3)
    assert sol.cost == 0 and not sol.incomplete
    assert sol.nodes >= 1


def test_budget_configs_marks_incomplete(fixtures, line3):
    circuit = parse_qasm((fixtures / "two_cnots.qasm").read_text())
    sol = compile_exact(circuit, line3, SearchBudget(max_initial_configs=2))
    assert sol.incomplete
    _sound(circuit, sol, line3)


def test_budget_orders_marks_incomplete(line5):
    circuit = Circuit(5, (cnot(0, 4), cnot(1, 3), cnot(2, 0)))
    sol = compile_exact(circuit, line5, SearchBudget(max_cnot_orders=1, max_initial_configs=3))
    assert sol.incomplete
    assert sol.cnot_order == (0, 1, 2)


def test_budget_nodes_degrades_gracefully(line5):
    circuit = Circuit(5, (cnot(0, 4), cnot(1, 3), cnot(4, 2), cnot(3, 0)))
    sol = compile_exact(circuit, line5, SearchBudget(max_nodes=50))
    assert sol.incomplete and sol.nodes <= 50
    _sound(circuit, sol, line5)


def test_time_limit_returns_incumbent(line5):
    circuit = Circuit(5, tuple(cnot(a, b) for a, b in [(0, 4), (1, 3), (4, 2), (3, 0), (2, 1), (0, 3)]))
    sol = compile_exact(circuit, line5, SearchBudget(time_limit=0.2))
    _sound(circuit, sol, line5)


def test_tiny_budget_raises(line5):
    circuit = Circuit(5, (cnot(0, 4), cnot(1, 3)))
    with pytest.raises(SearchExhausted):
        compile_exact(circuit, line5, SearchBudget(max_nodes=1))


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_nodes=0)
    with pytest.raises(ValueError):
        SearchBudget(time_limit=-1.0)


def test_exact_is_deterministic(line5):
    circuit = Circuit(5, (cnot(0, 4), h(2), cnot(3, 1), cnot(2, 0)))
    first = compile_exact(circuit, line5, SearchBudget(max_nodes=3000))
    second = compile_exact(circuit, line5, SearchBudget(max_nodes=3000))
    assert first.to_json() == second.to_json()


def test_initial_configurations_lexicographic():
    configs, cut = initial_configurations(3)
    assert [c.to_hw for c in configs] == list(itertools.permutations(range(3)))
    assert not cut
    configs, cut = initial_configurations(3, 4)
    assert len(configs) == 4 and cut
    assert not initial_configurations(3, 6)[1]


@pytest.mark.parametrize("q, n, v, expected", [(3, 2, 3, 432), (3, 0, 3, 0), (5, 4, 5, 14_400_000)])
def test_search_space_size_examples(q, n, v, expected):
    assert search_space_size(q, n, v) == expected


@given(st.integers(1, 12), st.integers(0, 12), st.integers(1, 12))
def test_search_space_size_formula(q, n, v):
    value = search_space_size(q, n, v)
    assert isinstance(value, int)
    assert value == 2 * n * math.prod(range(1, q + 1)) * v**n * math.prod(range(1, n + 1))


def test_search_space_size_rejects_bad_input():
    with pytest.raises(ValueError):
        search_space_size(0, 1, 1)


def test_solution_json_round_trip(line5):
    circuit = Circuit(5, (h(1), cnot(0, 4), cnot(2, 3)))
    sol = compile_greedy(circuit, line5, Configuration((4, 3, 2, 1, 0)))
    doc = json.loads(sol.to_json())
    back = Solution.from_dict(doc)
    assert back.compiled == sol.compiled
    assert back.objective == sol.objective
    assert (back.initial_config, back.final_config) == (sol.initial_config, sol.final_config)
    assert back.to_json() == sol.to_json()


@st.composite
def instances(draw):
    q = draw(st.integers(2, 4))
    n = draw(st.integers(q, 5))
    seed = draw(st.integers(0, 10_000))
    rng = random.Random(seed)
    graph = random_connected_graph(rng, n)
    gates = []
    for _ in range(draw(st.integers(0, 4))):
        kind = draw(st.sampled_from([GateKind.CNOT, GateKind.CNOT, GateKind.H, GateKind.T, GateKind.SWAP]))
        gates.append(Gate(kind, tuple(draw(st.permutations(range(q)))[: kind.arity])))
    return Circuit(q, tuple(gates)), graph


@settings(max_examples=40, deadline=None)
@given(instances())
def test_both_strategies_are_sound(instance):
    circuit, graph = instance
    greedy = compile_greedy(circuit, graph)
    _sound(circuit, greedy, graph)
    exact = compile_exact(circuit, graph, SearchBudget(max_nodes=5000))
    _sound(circuit, exact, graph)
    if not exact.incomplete:
        assert exact.objective <= greedy.objective


@settings(max_examples=40, deadline=None)
@given(instances())
def test_greedy_accounting(instance):
    circuit, graph = instance
    sol = compile_greedy(circuit, graph)
    kinds = [g.kind for g in sol.compiled.gates]
    original = [g.kind for g in circuit.gates]
    assert kinds.count(GateKind.SWAP) - original.count(GateKind.SWAP) == sol.added_swaps
    assert kinds.count(GateKind.H) - original.count(GateKind.H) == sol.added_hadamards
    assert sol.added_hadamards % 4 == 0
    assert kinds.count(GateKind.CNOT) == original.count(GateKind.CNOT)


def test_single_config_single_order_budget(line5):
    circuit = Circuit(5, (cnot(0, 4), h(1), cnot(1, 3), cnot(2, 0)))
    sol = compile_exact(circuit, line5, SearchBudget(max_initial_configs=1, max_cnot_orders=1))
    assert sol.incomplete
    assert sol.initial_config == Configuration.identity(5)
    assert sol.cnot_order == circuit.cnot_indices
    # a pure edge-choice search never does worse than greedy from the same start
    assert sol.objective <= compile_greedy(circuit, line5).objective
    _sound(circuit, sol, line5)
