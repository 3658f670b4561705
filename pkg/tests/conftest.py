from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from strictmetric.graph import Graph  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def report(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def emit(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        lines.append(line)

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 6, max_extra: int = 6) -> Graph:
    """A random spanning tree plus a few extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if missing:
        extra = draw(st.lists(st.sampled_from(missing), max_size=max_extra, unique=True))
        edges.update(extra)
    return Graph.from_edges(n, sorted(edges))


@st.composite
def weighted_graphs(draw, max_n: int = 6, low: int = 1, high: int = 30):
    g = draw(connected_graphs(min_n=2, max_n=max_n))
    w = {e: draw(st.integers(low, high)) for e in g.sorted_edges}
    return g, w
