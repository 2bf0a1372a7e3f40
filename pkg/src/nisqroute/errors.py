"""Exception types shared across the package."""
from __future__ import annotations


class QasmError(ValueError):
    """Raised for malformed or unsupported QASM input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class QasmWarning(UserWarning):
    """Emitted when a statement outside the supported subset is skipped."""


class CouplingError(ValueError):
    """Raised for an invalid coupling graph description."""


class RoutingError(RuntimeError):
    """Base class for failures while routing a circuit."""


class NoEdge(RoutingError):
    """A CNOT was requested between two vertices with no coupling edge."""


class NoPath(RoutingError):
    """A qubit state cannot be moved to the requested vertex."""


class AllUnreachable(RoutingError):
    """Every coupling edge is unreachable for the qubit pair."""


class SearchExhausted(RoutingError):
    """The search budget ran out before any complete solution was found."""
