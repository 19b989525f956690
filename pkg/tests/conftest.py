import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def chain():
    from pathweave.graph import Graph
    return Graph.from_edges(3, [(0, 1, 3), (1, 2, 4)])


@pytest.fixture
def diamond():
    from pathweave.graph import Graph
    return Graph.from_edges(3, [(0, 1, 1), (0, 2, 5), (1, 2, -3)])


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
