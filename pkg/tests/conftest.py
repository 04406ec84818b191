import itertools
import random

import pytest
from hypothesis import strategies as st

from fbd.counterexample import glue_copies
from fbd.graph import DirectedGraph
from fbd.pyramid import build_fbd, build_tree, distance5_minimize

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fbd10():
    return build_fbd(10)


@pytest.fixture(scope="session")
def tree10():
    return build_tree(10)


@pytest.fixture(scope="session")
def minimized(fbd10):
    return distance5_minimize(fbd10.graph)


@pytest.fixture(scope="session")
def glued6(fbd10):
    return glue_copies(fbd10.graph, copies=6)


def random_oriented(n, p, rng):
    edges = set()
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v) if rng.random() < 0.5 else (v, u))
    return DirectedGraph(n, frozenset(edges))


def random_digraph(n, p, rng):
    """Any ordered pair (loops included) present with probability ``p``."""
    return DirectedGraph(
        n, frozenset((u, v) for u in range(n) for v in range(n) if rng.random() < p)
    )


@st.composite
def oriented_graphs(draw, max_vertices=9):
    n = draw(st.integers(0, max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    edges = set()
    for u, v in pairs:
        choice = draw(st.sampled_from((None, "fwd", "back")))
        if choice == "fwd":
            edges.add((u, v))
        elif choice == "back":
            edges.add((v, u))
    return DirectedGraph(n, frozenset(edges))


@st.composite
def digraphs(draw, max_vertices=7):
    n = draw(st.integers(1, max_vertices))
    edges = draw(st.frozensets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    return DirectedGraph(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240601)
