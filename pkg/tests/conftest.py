import pytest
from hypothesis import strategies as st

from graphpullback.graph import Graph

ACCEPTANCE_LINES = []


@pytest.fixture
def podles_graph():
    return Graph.build("P", ["w", "u1", "u2"],
                       {"loop": ("w", "w"), "a": ("w", "u1"), "b": ("w", "u2")})


@pytest.fixture
def loop_graph():
    return Graph.build("loop", ["z"], {"m": ("z", "z")})


@pytest.fixture
def arrow_graph():
    """x --e--> y with y a sink."""
    return Graph.build("arrow", ["x", "y"], {"e": ("x", "y")})


@st.composite
def small_graphs(draw, max_vertices=4, max_edges=5, total=None):
    n = draw(st.integers(1, max_vertices))
    vs = [f"v{i}" for i in range(n)]
    cap = max_edges if total is None else min(max_edges, total - n)
    m = draw(st.integers(0, max(cap, 0)))
    edges = {f"e{k}": (draw(st.sampled_from(vs)), draw(st.sampled_from(vs))) for k in range(m)}
    return Graph.build("G", vs, edges)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
