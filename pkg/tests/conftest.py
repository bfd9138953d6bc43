import itertools
import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from qisplit.graph_core import Graph


def random_connected(rng: random.Random, n: int, extra: float = 0.2) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``extra``."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.add((u, v))
    return Graph.from_edges(n, edges)


def to_nx(g: Graph, weights=None) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    for i, (u, v) in enumerate(g.edges):
        out.add_edge(u, v, weight=1 if weights is None else weights.values[i])
    return out


def simple_paths(g: Graph, source: int, max_hop=None):
    """Every simple path starting at ``source`` (brute force)."""
    stack = [(source,)]
    while stack:
        p = stack.pop()
        yield p
        if max_hop is not None and len(p) - 1 >= max_hop:
            continue
        for v in g.adjacency[p[-1]]:
            if v not in p:
                stack.append(p + (v,))


def brute_girth(g: Graph):
    """Shortest cycle through each edge = 1 + distance between its ends without it."""
    best = float("inf")
    for i, (u, v) in enumerate(g.edges):
        rest = nx.Graph()
        rest.add_nodes_from(range(g.n))
        rest.add_edges_from(e for j, e in enumerate(g.edges) if j != i)
        try:
            best = min(best, 1 + nx.shortest_path_length(rest, u, v))
        except nx.NetworkXNoPath:
            pass
    return best


def brute_colorable(g: Graph, k: int) -> bool:
    for colors in itertools.product(range(k), repeat=g.n):
        if all(colors[u] != colors[v] for u, v in g.edges):
            return True
    return False


@st.composite
def connected_graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    extra = draw(st.sampled_from([0.0, 0.1, 0.3, 0.6]))
    return random_connected(random.Random(seed), n, extra)


@pytest.fixture
def rng():
    return random.Random(20250218)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for tag in sorted(results, key=lambda t: int(t[2:])):
            terminalreporter.write_line(results[tag])
