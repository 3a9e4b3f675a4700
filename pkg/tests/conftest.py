import pytest

from typetree.problem import ProblemInstance

# Example matching matrix used throughout the reduction and bounds discussion.
PAPER_M = (
    (0, 1, -1, 2, -1, -1),
    (-2, 0, 2, -2, 0, 2),
)
PAPER_REDUCED = (
    (0, 1, -1, 1, -1, -1),
    (-1, 0, 2, -1, 0, 2),
)


@pytest.fixture
def paper_instance():
    return ProblemInstance(2, PAPER_M)


@pytest.fixture
def free_instance():
    """One tetrahedron, no matching equations."""
    return ProblemInstance(1, ())


# Acceptance tests append (criterion, passed, detail) here; printed after the run.
ACCEPTANCE_REPORT: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE_REPORT):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
