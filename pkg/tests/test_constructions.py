import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import connected_graphs, random_connected, to_nx
from qisplit.constructions import (
    Orientation,
    attach_pendant_paths,
    cage,
    complete_graph,
    cycle_graph,
    lcf_graph,
    mycielski,
    orient,
    path_graph,
    pendant_tips,
    petersen_graph,
    random_high_girth,
    subdivide,
    vertex_split,
)
from qisplit.graph_core import (
    INF,
    DisconnectedGraphError,
    Graph,
    GraphError,
    chromatic_number_exact,
    distance_matrix,
    girth,
    hop_distances,
)


def test_split_of_single_edge_is_three_edge_path():
    h = path_graph(2)
    s = vertex_split(h, orient(h))
    assert s.graph == Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert s.projection.image == (0, 0, 1, 1)
    assert (s.minus_of, s.plus_of) == ((0, 2), (1, 3))


def test_split_of_cyclic_triangle_is_hexagon():
    tri = complete_graph(3)
    o = Orientation.from_arcs(tri, [(0, 1), (1, 2), (2, 0)])
    s = vertex_split(tri, o)
    assert nx.is_isomorphic(to_nx(s.graph), nx.cycle_graph(6))


def test_split_routes_in_edges_to_minus_and_out_edges_to_plus():
    # vertex 1 has in-neighbour 0 and out-neighbours 2, 3
    h = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    s = vertex_split(h, orient(h))
    m, p = s.minus_of[1], s.plus_of[1]
    assert s.graph.neighbors(m) == (s.plus_of[0], p)
    assert s.graph.neighbors(p) == (m, s.minus_of[2], s.minus_of[3])


@pytest.mark.parametrize("seed", range(15))
def test_split_invariants(seed):
    rng = random.Random(seed)
    h = random_connected(rng, rng.randint(1, 15), 0.2)
    o = orient(h, "random", seed=seed)
    s = vertex_split(h, o)
    g = s.graph
    assert g.n == 2 * h.n and g.m == h.n + h.m
    for v in range(h.n):
        assert (s.minus_of[v], s.plus_of[v]) == (2 * v, 2 * v + 1)
        assert g.has_edge(2 * v, 2 * v + 1)
        assert s.projection(2 * v) == s.projection(2 * v + 1) == v
    for u in range(h.n):
        for v in range(h.n):
            if u != v:
                assert g.has_edge(s.plus_of[u], s.minus_of[v]) == o.is_arc(u, v)
    assert girth(g) >= girth(h)


def test_split_errors():
    h = path_graph(3)
    with pytest.raises(GraphError):
        vertex_split(h, orient(path_graph(4)))
    d = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(DisconnectedGraphError):
        vertex_split(d, orient(d))


def test_partial_split_keeps_unsplit_vertices():
    h = path_graph(3)
    s = vertex_split(h, orient(h), vertices=[1])
    assert s.graph.n == 4 and not s.is_full
    assert s.minus_of == (0, 1, 3) and s.plus_of == (0, 2, 3)
    assert s.projection.image == (0, 1, 1, 2)


def test_subdivide_examples():
    tri = complete_graph(3)
    g, phi = subdivide(tri, 1)
    assert g == tri and phi.image == (0, 1, 2)
    g, _ = subdivide(tri, 2)
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(6))
    g, _ = subdivide(complete_graph(4), 3)
    assert (g.n, g.m, girth(g)) == (16, 18, 9)
    with pytest.raises(GraphError):
        subdivide(tri, 0)


def test_subdivide_maps_to_nearest_endpoint():
    g, phi = subdivide(path_graph(2), 4)
    # new vertices 2, 3, 4 sit at distance 1, 2, 3 from vertex 0
    assert phi.image == (0, 1, 0, 0, 1)
    for x in range(g.n):
        d = hop_distances(g, x)
        assert d[phi(x)] <= min(d[0], d[1])


@given(connected_graphs(max_n=8), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_subdivide_scales_distances(h, t):
    g, _ = subdivide(h, t)
    dh, dg = distance_matrix(h), distance_matrix(g)
    for u in range(h.n):
        for v in range(h.n):
            assert dg[u][v] == t * dh[u][v]


def test_attach_pendant_paths_counts():
    g, anchor = attach_pendant_paths(path_graph(2), 3, 2)
    assert g.n == 10
    tips = pendant_tips(anchor)
    assert sorted(hop_distances(g, tip)[a] for tip, a in tips.items()) == [3, 5]
    g, anchor = attach_pendant_paths(complete_graph(3), 2, 1)
    assert g.n == 12
    g, anchor = attach_pendant_paths(cycle_graph(4), 3, 0)
    assert {hop_distances(g, t)[a] for t, a in pendant_tips(anchor).items()} == {3}
    with pytest.raises(GraphError):
        attach_pendant_paths(cycle_graph(4), 0, 1)


def test_pendant_anchor_map():
    h = cycle_graph(5)
    g, anchor = attach_pendant_paths(h, 2, 3)
    assert anchor.codomain == h
    for x in range(g.n):
        # the anchor of every pendant vertex is its unique nearest original vertex
        d = hop_distances(g, x)
        assert min(range(h.n), key=lambda v: d[v]) == anchor(x)


def test_mycielski_examples():
    assert nx.is_isomorphic(to_nx(mycielski(path_graph(2))), nx.cycle_graph(5))
    grotzsch = mycielski(cycle_graph(5))
    assert (grotzsch.n, grotzsch.m) == (11, 20)
    assert chromatic_number_exact(grotzsch) == 4
    g = path_graph(2)
    for _ in range(3):
        g = mycielski(g)
    assert g.n == 23 and girth(g) == 4
    assert chromatic_number_exact(g) == 5


@pytest.mark.parametrize("seed", range(6))
def test_mycielski_raises_chromatic_number_by_one(seed):
    rng = random.Random(seed)
    g = random_connected(rng, rng.randint(2, 7), 0.3)
    m = mycielski(g)
    assert chromatic_number_exact(m) == chromatic_number_exact(g) + 1
    if girth(g) > 3:
        assert girth(m) > 3


def test_cages_have_expected_girth():
    expected = {"petersen": (10, 5), "heawood": (14, 6), "mcgee": (24, 7), "tutte-coxeter": (30, 8)}
    for name, (n, gi) in expected.items():
        g = cage(name)
        assert g.n == n and g.m == 3 * n // 2 and girth(g) == gi
        assert all(g.degree(v) == 3 for v in range(n))
    assert cage("petersen") == petersen_graph()
    with pytest.raises(GraphError):
        cage("nope")
    with pytest.raises(GraphError):
        lcf_graph(6, [3], 5)


def test_random_high_girth_examples():
    s = random_high_girth(60, 0.1, 3, seed=1)
    assert s.deleted == 0
    s = random_high_girth(200, 0.03, 6, seed=7)
    assert girth(s.graph) >= 6 and s.girth == girth(s.graph)
    assert s == random_high_girth(200, 0.03, 6, seed=7)
    s = random_high_girth(50, 0.9, 50, seed=3)
    assert s.girth == INF
    with pytest.raises(GraphError):
        random_high_girth(10, 1.0, 4, seed=0)


@given(st.integers(5, 40), st.floats(0.05, 0.5), st.integers(3, 9), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_random_high_girth_reaches_target(n, p, g, seed):
    s = random_high_girth(n, p, g, seed)
    assert s.girth >= g
    assert nx.is_connected(to_nx(s.graph))


def test_orient_modes():
    k3 = complete_graph(3)
    assert orient(k3).arcs == ((0, 1), (0, 2), (1, 2))
    h = random_connected(random.Random(0), 20, 0.2)
    assert orient(h, "random", seed=4) == orient(h, "random", seed=4)
    for mode, seed in (("low_to_high", None), ("random", 9)):
        o = orient(h, mode, seed=seed)
        assert sorted(tuple(sorted(a)) for a in o.arcs) == list(h.edges)
    with pytest.raises(GraphError):
        orient(h, "random")
    with pytest.raises(GraphError):
        orient(k3, "bipartite")
    with pytest.raises(GraphError):
        orient(k3, "sideways")
    o = orient(cycle_graph(6), "bipartite")
    assert all(len(o.out_neighbors[v]) in (0, 2) for v in range(6))


def test_orientation_validation():
    h = path_graph(3)
    with pytest.raises(GraphError):
        Orientation(h, (0,))
    with pytest.raises(GraphError):
        Orientation(h, (2, 1))
    with pytest.raises(GraphError):
        Orientation.from_arcs(h, [(0, 1)])
    o = Orientation.from_arcs(h, [(1, 0), (1, 2)])
    assert o.out_neighbors[1] == (0, 2) and o.in_neighbors[0] == (1,)
    assert o.is_arc(1, 0) and not o.is_arc(0, 1) and not o.is_arc(0, 2)
