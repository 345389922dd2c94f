import sys
from pathlib import Path

import pytest

from reforcite.graph import EvolvingDigraph

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def star():
    """Node 0 cited by nodes 1..5."""
    g = EvolvingDigraph()
    g.add_node([])
    for _ in range(5):
        g.add_node([0])
    return g


@pytest.fixture
def chain():
    """0 <- 1 <- 2 <- 3."""
    g = EvolvingDigraph()
    g.add_node([])
    for u in range(1, 4):
        g.add_node([u - 1])
    return g


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion, echoed in the terminal summary."""
    lines = request.config.stash.setdefault(_CRITERIA, [])

    def record(name: str, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        lines.append(line)
        print(line)
        if not ok:
            pytest.fail(line, pytrace=False)
        return True

    return record


_CRITERIA = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
