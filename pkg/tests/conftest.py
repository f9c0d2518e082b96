from pathlib import Path

import pytest

from ssplift.core import ProblemKind, SspInstance
from ssplift.problems import CnfFormula, GraphProblem

DATA = Path(__file__).parent / "data"


def sat(num_vars, clauses, kind=ProblemKind.SATISFIABILITY):
    return SspInstance(kind, CnfFormula.of(num_vars, clauses))


def three_sat(num_vars, clauses):
    return sat(num_vars, clauses, ProblemKind.THREE_SATISFIABILITY)


def graph(kind, n, edges, k):
    return SspInstance(kind, GraphProblem.of(n, edges, k))


TRIANGLE = [(0, 1), (1, 2), (0, 2)]


@pytest.fixture
def single_clause():
    """The single clause (¬x1 ∨ ¬x2 ∨ x3)."""
    return three_sat(3, [(-1, -2, 3)])


@pytest.fixture
def data_dir():
    return DATA


# lines collected by test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
