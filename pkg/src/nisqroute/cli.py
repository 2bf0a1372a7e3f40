"""Command-line front end.

Exit codes: 0 success, 1 unreadable input, 2 routing infeasible,
3 verification failed, 4 search budget exhausted under ``--strict``.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import warnings
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from .circuit import Circuit, Gate, GateKind, metrics
from .coupling import CouplingGraph, parse_coupling
from .diagram import DEFAULT_Q_LIMIT, export_search_diagram
from .errors import CouplingError, QasmError, QasmWarning, RoutingError, SearchExhausted
from .mapping import Configuration
from .qasm import parse_qasm, to_qasm
from .search import (
    DEFAULT_SWAP_WEIGHT,
    SearchBudget,
    Solution,
    compile_exact,
    compile_greedy,
    initial_configurations,
    search_space_size,
)
from .verify import verification_report

EXIT_OK, EXIT_PARSE, EXIT_ROUTING, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3, 4

log = logging.getLogger("nisqroute")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    circuit_path: Path | None = None
    coupling_path: Path | None = None
    solution_path: Path | None = None
    strategy: str = "greedy"
    initial: str | None = None
    max_configs: int | None = None
    max_orders: int | None = None
    max_nodes: int | None = None
    time_limit: float | None = None
    swap_weight: float = DEFAULT_SWAP_WEIGHT
    expand_swap: bool = False
    output_path: Path | None = None
    seed: int = 0
    strict: bool = False
    q_limit: int = DEFAULT_Q_LIMIT
    qubits: int = 3
    cnots: int = 2
    singles: int = 0

    def __post_init__(self):
        needs = {
            "compile": ("circuit_path", "coupling_path"),
            "verify": ("circuit_path", "coupling_path", "solution_path"),
            "stats": ("circuit_path", "coupling_path"),
            "diagram": ("circuit_path",),
            "generate": (),
        }
        if self.command not in needs:
            raise ValueError(f"unknown command {self.command!r}")
        for name in needs[self.command]:
            if not getattr(self, name):
                raise ValueError(f"{self.command} requires --{name.split('_')[0]}")
        if self.swap_weight <= 0:
            raise ValueError("--swap-weight must be positive")

    @property
    def budget(self) -> SearchBudget:
        return SearchBudget(self.max_configs, self.max_orders, self.max_nodes, self.time_limit)


def _read(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_circuit(path: Path) -> Circuit:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", QasmWarning)
        circuit = parse_qasm(_read(path))
    for w in caught:
        log.warning("%s: %s", path, w.message)
    return circuit


def _load_coupling(path: Path) -> CouplingGraph:
    return parse_coupling(_read(path))


def _explicit_config(text: str, n: int) -> Configuration:
    try:
        perm = tuple(int(x) for x in text.split(","))
        config = Configuration(perm)
    except ValueError as exc:
        raise InputError(f"--initial {text!r} is not a permutation: {exc}") from exc
    if config.size != n:
        raise InputError(f"--initial has {config.size} entries, the device has {n} qubits")
    return config


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _compile(cfg: RunConfig) -> int:
    circuit = _load_circuit(cfg.circuit_path)
    graph = _load_coupling(cfg.coupling_path)
    n = graph.num_qubits
    mode = cfg.initial or ("enumerate" if cfg.strategy == "exact" else "identity")
    if mode == "identity":
        configs = [Configuration.identity(n)]
    elif mode == "enumerate":
        configs = None
    else:
        configs = [_explicit_config(mode, n)]

    if cfg.strategy == "exact":
        solution = compile_exact(
            circuit, graph, cfg.budget, cfg.swap_weight, cfg.expand_swap, configs
        )
    else:
        if configs is None:
            configs, cut = initial_configurations(n, cfg.max_configs)
        else:
            cut = False
        solution = None
        for start in configs:
            candidate = compile_greedy(circuit, graph, start, cfg.swap_weight, cfg.expand_swap)
            if solution is None or candidate.objective < solution.objective:
                solution = candidate
        if cut:
            solution = replace(solution, incomplete=True)

    _write(cfg.output_path, solution.to_json())
    if cfg.output_path is not None:
        Path(cfg.output_path).with_suffix(".qasm").write_text(
            to_qasm(solution.compiled), encoding="utf-8"
        )
    if solution.incomplete and cfg.strict:
        log.error("search budget exhausted; result is not proven optimal")
        return EXIT_BUDGET
    return EXIT_OK


def _verify(cfg: RunConfig) -> int:
    circuit = _load_circuit(cfg.circuit_path)
    graph = _load_coupling(cfg.coupling_path)
    try:
        solution = Solution.from_dict(json.loads(_read(cfg.solution_path)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed solution file {cfg.solution_path}: {exc}") from exc
    if solution.compiled.num_qubits < circuit.num_qubits:
        raise InputError("compiled circuit is narrower than the original")
    report = verification_report(circuit, solution, graph)
    _write(cfg.output_path, json.dumps(report, indent=2, sort_keys=True) + "\n")
    ok = report["structural"]["passed"] and report["semantic"]["passed"]
    return EXIT_OK if ok else EXIT_VERIFY


def _stats(cfg: RunConfig) -> int:
    circuit = _load_circuit(cfg.circuit_path)
    graph = _load_coupling(cfg.coupling_path)
    m = metrics(circuit, cfg.expand_swap)
    n_cnots = len(circuit.cnot_indices)
    doc = {
        "num_qubits": circuit.num_qubits,
        "coupling_vertices": graph.num_qubits,
        "coupling_edges": len(graph.edges),
        "cnots": n_cnots,
        "metrics": m.to_dict(),
        "search_space_size": search_space_size(circuit.num_qubits, n_cnots, graph.num_qubits),
    }
    _write(cfg.output_path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _diagram(cfg: RunConfig) -> int:
    circuit = _load_circuit(cfg.circuit_path)
    graph = _load_coupling(cfg.coupling_path) if cfg.coupling_path else None
    try:
        dot = export_search_diagram(circuit, graph, q_limit=cfg.q_limit)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _write(cfg.output_path, dot)
    return EXIT_OK


_SINGLE_KINDS = [k for k in GateKind if k.arity == 1]


def random_circuit(rng: random.Random, qubits: int, cnots: int, singles: int = 0) -> Circuit:
    """Random CNOTs with ``singles`` single-qubit gates spread among them."""
    gates = []
    for _ in range(cnots):
        c, t = rng.sample(range(qubits), 2)
        gates.append(Gate(GateKind.CNOT, (c, t)))
    for _ in range(singles):
        pos = rng.randint(0, len(gates))
        gates.insert(pos, Gate(rng.choice(_SINGLE_KINDS), (rng.randrange(qubits),)))
    return Circuit(qubits, tuple(gates))


def _generate(cfg: RunConfig) -> int:
    if cfg.qubits < 2 and cfg.cnots:
        raise InputError("CNOTs need at least two qubits")
    circuit = random_circuit(random.Random(cfg.seed), cfg.qubits, cfg.cnots, cfg.singles)
    _write(cfg.output_path, to_qasm(circuit))
    return EXIT_OK


_COMMANDS = {
    "compile": _compile,
    "verify": _verify,
    "stats": _stats,
    "diagram": _diagram,
    "generate": _generate,
}


def run(cfg: RunConfig) -> int:
    try:
        return _COMMANDS[cfg.command](cfg)
    except (InputError, QasmError, CouplingError) as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except SearchExhausted as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except RoutingError as exc:
        log.error("routing infeasible: %s", exc)
        return EXIT_ROUTING


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--circuit", type=Path, help="input circuit (OpenQASM 2.0 subset)")
    common.add_argument("--coupling", type=Path, help="coupling graph JSON")
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--expand-swap", action="store_true",
                        help="count each SWAP as three CNOTs in gate counts and depth")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="nisqroute", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compile", parents=[common], help="route a circuit onto a coupling graph")
    comp.add_argument("--strategy", choices=("exact", "greedy"), default="greedy")
    comp.add_argument("--initial",
                      help="identity, enumerate, or an explicit placement such as 2,0,1 "
                           "(default: identity for greedy, enumerate for exact)")
    comp.add_argument("--max-configs", type=_positive_int)
    comp.add_argument("--max-orders", type=_positive_int)
    comp.add_argument("--max-nodes", type=_positive_int)
    comp.add_argument("--time-limit", type=float)
    comp.add_argument("--swap-weight", type=float, default=DEFAULT_SWAP_WEIGHT)
    comp.add_argument("--strict", action="store_true", help="exit 4 if the search was cut short")

    ver = sub.add_parser("verify", parents=[common], help="check a compiled solution")
    ver.add_argument("--solution", type=Path, help="solution JSON written by compile")

    sub.add_parser("stats", parents=[common], help="circuit metrics and search-space size")

    dia = sub.add_parser("diagram", parents=[common], help="write the search diagram as DOT")
    dia.add_argument("--q-limit", type=_positive_int, default=DEFAULT_Q_LIMIT)

    gen = sub.add_parser("generate", parents=[common], help="write a seeded random circuit")
    gen.add_argument("--qubits", type=_positive_int, default=3)
    gen.add_argument("--cnots", type=int, default=2)
    gen.add_argument("--singles", type=int, default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        circuit_path=args.circuit,
        coupling_path=args.coupling,
        solution_path=getattr(args, "solution", None),
        strategy=getattr(args, "strategy", "greedy"),
        initial=getattr(args, "initial", None),
        max_configs=getattr(args, "max_configs", None),
        max_orders=getattr(args, "max_orders", None),
        max_nodes=getattr(args, "max_nodes", None),
        time_limit=getattr(args, "time_limit", None),
        swap_weight=getattr(args, "swap_weight", DEFAULT_SWAP_WEIGHT),
        expand_swap=args.expand_swap,
        output_path=args.out,
        seed=args.seed,
        strict=getattr(args, "strict", False),
        q_limit=getattr(args, "q_limit", DEFAULT_Q_LIMIT),
        qubits=getattr(args, "qubits", 3),
        cnots=getattr(args, "cnots", 2),
        singles=getattr(args, "singles", 0),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
