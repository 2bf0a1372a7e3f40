from pathlib import Path

import pytest

from nisqroute import CouplingGraph, parse_coupling

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance_lines: list[str] = []


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def line5() -> CouplingGraph:
    return parse_coupling((FIXTURES / "line5.json").read_text())


@pytest.fixture
def line3() -> CouplingGraph:
    return parse_coupling((FIXTURES / "line3.json").read_text())


@pytest.fixture
def reversed2() -> CouplingGraph:
    return CouplingGraph(2, ((1, 0),))


@pytest.fixture(scope="session")
def acceptance_report():
    """Collects one PASS/FAIL line per acceptance criterion."""

    def record(number: int, title: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        _acceptance_lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
