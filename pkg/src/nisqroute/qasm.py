"""Reader and writer for the small OpenQASM 2.0 subset the router accepts.

Only ``cx, h, t, tdg, s, sdg, x, z, swap`` are understood. ``measure``,
``barrier`` and ``creg`` statements are dropped with a :class:`QasmWarning`.
Anything else (gate definitions, parameters, conditionals) is an error.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .circuit import Circuit, Gate, GateKind
from .errors import QasmError, QasmWarning

_GATES = {k.qasm_name: k for k in GateKind}
_GATES["CX"] = GateKind.CNOT
_SKIPPED = {"measure", "barrier", "creg"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>//[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<real>\d+\.\d*|\.\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow>->)
  | (?P<symbol>[\[\];,(){}])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QasmError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "newline":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.reg_name: str | None = None
        self.num_qubits: int | None = None
        self.gates: list[Gate] = []

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("", "", 1, 0)
            raise QasmError(f"unexpected end of input, expected {what}", last.line, last.column + len(last.text))
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next(repr(text))
        if tok.text != text:
            raise QasmError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.column)
        return tok

    def expect_kind(self, kind: str, what: str) -> Token:
        tok = self.next(what)
        if tok.kind != kind:
            raise QasmError(f"expected {what}, found {tok.text!r}", tok.line, tok.column)
        return tok

    def skip_statement(self, head: Token) -> None:
        while True:
            tok = self.next("';'")
            if tok.text == ";":
                break
        warnings.warn(
            f"line {head.line}: '{head.text}' statement skipped", QasmWarning, stacklevel=4
        )

    def parse(self) -> Circuit:
        while self.peek() is not None:
            self.statement()
        if self.num_qubits is None:
            raise QasmError("no qreg declaration found")
        return Circuit(self.num_qubits, tuple(self.gates))

    def statement(self) -> None:
        head = self.next("statement")
        if head.kind != "ident":
            raise QasmError(f"unexpected {head.text!r}", head.line, head.column)
        name = head.text
        if name == "OPENQASM":
            version = self.next("version")
            if version.text != "2.0":
                raise QasmError(f"unsupported OPENQASM version {version.text}", version.line, version.column)
            self.expect(";")
        elif name == "include":
            self.expect_kind("string", "file name")
            self.expect(";")
        elif name == "qreg":
            self.qreg(head)
        elif name in _SKIPPED:
            self.skip_statement(head)
        elif name in _GATES:
            self.gate(head, _GATES[name])
        else:
            raise QasmError(f"unsupported gate or statement {name!r}", head.line, head.column)

    def qreg(self, head: Token) -> None:
        if self.reg_name is not None:
            raise QasmError("multiple qreg declarations are not supported", head.line, head.column)
        ident = self.expect_kind("ident", "register name")
        self.expect("[")
        size = self.expect_kind("int", "register size")
        self.expect("]")
        self.expect(";")
        if int(size.text) < 1:
            raise QasmError("qreg size must be positive", size.line, size.column)
        self.reg_name, self.num_qubits = ident.text, int(size.text)

    def operand(self) -> int:
        ident = self.expect_kind("ident", "qubit operand")
        if self.reg_name is None:
            raise QasmError("gate used before qreg declaration", ident.line, ident.column)
        if ident.text != self.reg_name:
            raise QasmError(f"unknown register {ident.text!r}", ident.line, ident.column)
        self.expect("[")
        idx = self.expect_kind("int", "qubit index")
        self.expect("]")
        value = int(idx.text)
        if value >= self.num_qubits:
            raise QasmError(
                f"qubit index {value} out of range for {self.reg_name}[{self.num_qubits}]",
                idx.line,
                idx.column,
            )
        return value

    def gate(self, head: Token, kind: GateKind) -> None:
        if self.peek() is not None and self.peek().text == "(":
            tok = self.peek()
            raise QasmError("parametrised gates are not supported", tok.line, tok.column)
        operands = [self.operand()]
        while self.peek() is not None and self.peek().text == ",":
            self.pos += 1
            operands.append(self.operand())
        self.expect(";")
        if len(operands) != kind.arity:
            raise QasmError(
                f"{head.text} expects {kind.arity} operand(s), got {len(operands)}",
                head.line,
                head.column,
            )
        if len(set(operands)) != len(operands):
            raise QasmError(f"{head.text} operands must be distinct", head.line, head.column)
        self.gates.append(Gate(kind, tuple(operands)))


def parse_qasm(text: str) -> Circuit:
    """Parse QASM source into a :class:`Circuit`, keeping source order."""
    return _Parser(tokenize(text)).parse()


def to_qasm(circuit: Circuit) -> str:
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    for g in circuit.gates:
        args = ",".join(f"q[{o}]" for o in g.operands)
        lines.append(f"{g.kind.qasm_name} {args};")
    return "\n".join(lines) + "\n"
