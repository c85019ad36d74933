import sys
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from snarktools.graph import CubicGraph  # noqa: E402


def random_cubic(n: int, seed: int) -> CubicGraph:
    g = nx.random_regular_graph(3, n, seed=seed)
    return CubicGraph(n, g.edges())


@st.composite
def cubic_graphs(draw, min_n=4, max_n=20, bridgeless=False, connected=True):
    n = draw(st.integers(min_n // 2, max_n // 2)) * 2
    seed = draw(st.integers(0, 2**31 - 1))
    for k in range(200):
        g = nx.random_regular_graph(3, n, seed=seed + k)
        if connected and not nx.is_connected(g):
            continue
        if bridgeless and nx.has_bridges(g):
            continue
        return CubicGraph(n, g.edges())
    raise AssertionError("no suitable random cubic graph found")


def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def acceptance(request):
    """Record ``(criterion number, passed, detail)`` for the summary."""

    def record(num: int, ok: bool, detail: str) -> None:
        request.config._acceptance[num] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        ok, detail = results[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
