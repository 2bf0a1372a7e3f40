"""DOT export of the search diagram.

Each CNOT-chain vertex gets one ring holding all ``q!`` configurations.
Ring ``k`` is joined to ring ``k+1`` by one radial copy of the chain per
configuration, labelled with the chain edge weight. Ring 0 is the centre.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .circuit import Circuit
from .coupling import CouplingGraph
from .dag import build_cnot_chain, build_dag

DEFAULT_Q_LIMIT = 4


def _label(perm: Sequence[int]) -> str:
    return "[" + ",".join(map(str, perm)) + "]"


def export_search_diagram(
    circuit: Circuit,
    graph: CouplingGraph | None = None,
    order: Sequence[int] | None = None,
    q_limit: int = DEFAULT_Q_LIMIT,
) -> str:
    q = circuit.num_qubits if graph is None else max(circuit.num_qubits, graph.num_qubits)
    if q > q_limit:
        raise ValueError(f"{q} qubits exceed the diagram limit of {q_limit} ({q}! nodes per ring)")
    dag = build_dag(circuit)
    chain = build_cnot_chain(dag, circuit.cnot_indices if order is None else order)
    perms = list(itertools.permutations(range(q)))
    rings = max(1, len(chain.vertices))

    lines = [
        "digraph search_diagram {",
        "  layout=twopi;",
        "  ranksep=1.2;",
        '  node [shape=hexagon, fontsize=10];',
    ]
    for k in range(rings):
        wire = chain.vertices[k] if chain.vertices else None
        title = f"ring {k}" + ("" if wire is None else f" (wire {wire})")
        lines.append(f"  subgraph ring_{k} {{")
        lines.append(f'    label="{title}";')
        for j, perm in enumerate(perms):
            lines.append(f'    c{k}_p{j} [label="p{j} {_label(perm)}"];')
        if len(perms) > 1:
            for j in range(len(perms)):
                lines.append(f"    c{k}_p{j} -> c{k}_p{(j + 1) % len(perms)} [dir=none, style=dotted];")
        lines.append("  }")
    for k, weight in enumerate(chain.weights):
        style = "bold" if weight else "dashed"
        for j in range(len(perms)):
            lines.append(f'  c{k}_p{j} -> c{k + 1}_p{j} [label="{weight}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def count_configuration_nodes(dot: str) -> int:
    return sum(1 for line in dot.splitlines() if "[label=\"p" in line and "->" not in line)
