"""Routing compiler that maps quantum circuits onto directed coupling graphs."""
from .circuit import Circuit, Gate, GateKind, Metrics, cnot, depth, h, metrics, swap
from .coupling import (
    CouplingGraph,
    Direction,
    DistanceMatrix,
    all_pairs_shortest_paths,
    expand_cnot,
    parse_coupling,
    supports,
)
from .dag import (
    CircuitDag,
    CnotChain,
    CnotOrders,
    build_cnot_chain,
    build_dag,
    enumerate_cnot_orders,
    schedule,
)
from .diagram import export_search_diagram
from .errors import (
    AllUnreachable,
    CouplingError,
    NoEdge,
    NoPath,
    QasmError,
    QasmWarning,
    RoutingError,
    SearchExhausted,
)
from .mapping import (
    Configuration,
    EdgeChoice,
    RoutePlan,
    apply_swap,
    is_remote,
    route_mi,
    route_mim,
    select_best_edge,
)
from .qasm import parse_qasm, to_qasm
from .search import SearchBudget, Solution, compile_exact, compile_greedy, search_space_size
from .verify import semantic_check, simulate, structural_check

__version__ = "0.1.0"
