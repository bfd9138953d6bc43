"""Graph constructions: orientations, the vertex split, subdivision, pendant
paths, and generators of high-girth / high-chromatic test graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .graph_core import (
    INF,
    Graph,
    GraphError,
    VertexMap,
    chromatic_upper_greedy,
    components,
    girth,
    require_connected,
    shortest_cycle,
)


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge of ``graph``; ``tails[i]`` is the tail of edge ``i``."""

    graph: Graph
    tails: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.tails) != self.graph.m:
            raise GraphError(f"{len(self.tails)} tails for {self.graph.m} edges")
        for (u, v), t in zip(self.graph.edges, self.tails):
            if t not in (u, v):
                raise GraphError(f"tail {t} is not an endpoint of edge {(u, v)}")

    @classmethod
    def from_arcs(cls, g: Graph, arcs) -> "Orientation":
        tails = [None] * g.m
        for u, v in arcs:
            i = g.index_of(u, v)
            if tails[i] is not None:
                raise GraphError(f"edge {(u, v)} oriented twice")
            tails[i] = u
        if None in tails:
            raise GraphError("every edge needs a direction")
        return cls(g, tuple(tails))

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (t, v if t == u else u) for (u, v), t in zip(self.graph.edges, self.tails)
        )

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.graph.n)]
        for a, b in self.arcs:
            out[a].append(b)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        inn: list[list[int]] = [[] for _ in range(self.graph.n)]
        for a, b in self.arcs:
            inn[b].append(a)
        return tuple(tuple(sorted(x)) for x in inn)

    def is_arc(self, u: int, v: int) -> bool:
        """True iff edge ``uv`` exists and is directed ``u -> v``."""
        i = self.graph.edge_index.get((u, v) if u < v else (v, u))
        return i is not None and self.tails[i] == u

    def restrict(self, sub: Graph) -> "Orientation":
        """Orientation of a spanning subgraph, inherited edge by edge."""
        return Orientation(sub, tuple(self.tails[self.graph.index_of(u, v)] for u, v in sub.edges))

    def check_owner(self, g: Graph) -> None:
        if self.graph != g:
            raise GraphError("orientation belongs to a different graph")


def orient(g: Graph, mode: str = "low_to_high", seed: Optional[int] = None) -> Orientation:
    """Orient every edge of ``g``.

    ``low_to_high`` is acyclic; ``random`` needs an explicit ``seed``;
    ``bipartite`` sends every edge from the first colour class of a 2-colouring
    (smallest vertex of each component in class 0), which makes every path
    alternating.
    """
    if mode == "low_to_high":
        return Orientation(g, tuple(u for u, _ in g.edges))
    if mode == "random":
        if seed is None:
            raise GraphError("random orientation requires an explicit seed")
        rng = random.Random(seed)
        return Orientation(g, tuple(e[rng.randrange(2)] for e in g.edges))
    if mode == "bipartite":
        side = _two_coloring(g)
        if side is None:
            raise GraphError("bipartite orientation needs a bipartite graph")
        return Orientation(g, tuple(u if side[u] == 0 else v for u, v in g.edges))
    raise GraphError(f"unknown orientation mode {mode!r}")


def _two_coloring(g: Graph) -> Optional[list[int]]:
    side = [-1] * g.n
    for comp in components(g):
        side[comp[0]] = 0
        stack = [comp[0]]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if side[v] == -1:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return None
    return side


# ---------------------------------------------------------------------------
# vertex split


@dataclass(frozen=True)
class SplitResult:
    source: Graph
    orientation: Orientation
    graph: Graph
    projection: VertexMap
    minus_of: tuple[int, ...]
    plus_of: tuple[int, ...]
    split_vertices: tuple[int, ...]

    @property
    def is_full(self) -> bool:
        return len(self.split_vertices) == self.source.n


def vertex_split(
    h: Graph, o: Orientation, vertices: Optional[Sequence[int]] = None
) -> SplitResult:
    """Replace each vertex ``v`` by an edge ``v- v+``; arc ``u -> v`` becomes ``u+ v-``.

    With ``vertices`` given, only those are split and the rest keep a single
    copy (used for the subdivided refinement).  In the full split ``v-`` is
    vertex ``2v`` and ``v+`` is ``2v + 1``.
    """
    o.check_owner(h)
    require_connected(h, "graph to split")
    chosen = set(range(h.n)) if vertices is None else set(vertices)
    for v in chosen:
        h.check_vertex(v)
    minus, plus, image = [], [], []
    k = 0
    for v in range(h.n):
        minus.append(k)
        image.append(v)
        k += 1
        if v in chosen:
            image.append(v)
            k += 1
        plus.append(k - 1)
    edges = [(minus[v], plus[v]) for v in sorted(chosen)]
    edges += [(plus[a], minus[b]) for a, b in o.arcs]
    g = Graph.from_edges(k, edges)
    return SplitResult(
        source=h,
        orientation=o,
        graph=g,
        projection=VertexMap(g, h, tuple(image)),
        minus_of=tuple(minus),
        plus_of=tuple(plus),
        split_vertices=tuple(sorted(chosen)),
    )


# ---------------------------------------------------------------------------
# refinements


def subdivide(h: Graph, t: int) -> tuple[Graph, VertexMap]:
    """Replace every edge by a path with ``t`` edges.

    Original vertices keep their labels; the ``t - 1`` new vertices of edge
    ``(u, v)`` (``u < v``, edges in order) follow, listed from ``u`` towards
    ``v``.  The returned map sends each new vertex to its nearer endpoint, ties
    going to ``u``.
    """
    if t < 1:
        raise GraphError("subdivision length must be at least 1")
    edges = []
    image = list(range(h.n))
    k = h.n
    for u, v in h.edges:
        chain = [u]
        for j in range(1, t):
            chain.append(k)
            image.append(u if j <= t - j else v)
            k += 1
        chain.append(v)
        edges.extend(zip(chain, chain[1:]))
    g = Graph.from_edges(k, edges)
    return g, VertexMap(g, h, tuple(image))


def attach_pendant_paths(h: Graph, base: int, stride: int) -> tuple[Graph, VertexMap]:
    """Hang a path of hop-length ``base + i * stride`` from every vertex ``i``.

    New vertices are appended per anchor, from the anchor outwards, so the
    last vertex of each block is its tip.  The map sends every vertex to its
    anchor.
    """
    if base < 1:
        raise GraphError("pendant base length must be at least 1")
    if stride < 0:
        raise GraphError("pendant stride must be nonnegative")
    edges = list(h.edges)
    image = list(range(h.n))
    k = h.n
    for i in range(h.n):
        prev = i
        for _ in range(base + i * stride):
            edges.append((prev, k))
            image.append(i)
            prev = k
            k += 1
    g = Graph.from_edges(k, edges)
    return g, VertexMap(g, h, tuple(image))


def pendant_tips(anchor: VertexMap) -> dict[int, int]:
    """Tip vertex -> anchor for a map returned by :func:`attach_pendant_paths`."""
    tips = {}
    for x, a in enumerate(anchor.image):
        if x >= anchor.codomain.n:
            tips[a] = x
    return {x: a for a, x in tips.items()}


# ---------------------------------------------------------------------------
# generators


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def lcf_graph(n: int, shifts: Sequence[int], repeats: int) -> Graph:
    """Cubic Hamiltonian graph from LCF notation ``[shifts]^repeats``."""
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    seq = list(shifts) * repeats
    if len(seq) != n:
        raise GraphError("LCF sequence length must equal n")
    for i, s in enumerate(seq):
        edges.add(tuple(sorted((i, (i + s) % n))))
    return Graph.from_edges(n, edges)


# (cubic) cages by name: girth 5..8
CAGES = {
    "petersen": petersen_graph,
    "heawood": lambda: lcf_graph(14, [5, -5], 7),
    "mcgee": lambda: lcf_graph(24, [12, 7, -7], 8),
    "tutte-coxeter": lambda: lcf_graph(30, [-13, -9, 7, -7, 9, 13], 5),
}


def cage(name: str) -> Graph:
    try:
        return CAGES[name]()
    except KeyError:
        raise GraphError(f"unknown cage {name!r}; choose from {sorted(CAGES)}") from None


def mycielski(g: Graph) -> Graph:
    """Mycielskian: copies ``u_i = n + i`` of each vertex plus an apex ``2n``."""
    n = g.n
    edges = list(g.edges)
    for a, b in g.edges:
        edges.append((n + a, b))
        edges.append((n + b, a))
    edges.extend((n + i, 2 * n) for i in range(n))
    return Graph.from_edges(2 * n + 1, edges)


@dataclass(frozen=True)
class HighGirthSample:
    graph: Graph
    girth: float
    chromatic_upper: int
    deleted: int
    seed: int


def erdos_renyi(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    )


def random_high_girth(n: int, p: float, g: int, seed: int) -> HighGirthSample:
    """Sample G(n, p) and delete vertices until no cycle shorter than ``g`` remains.

    Each round removes the highest-degree vertex (smallest label on ties) of
    the current shortest cycle.  The largest component of what survives is
    returned, relabelled in increasing order.
    """
    if n < 1:
        raise GraphError("n must be positive")
    if not 0 < p < 1:
        raise GraphError("p must lie strictly between 0 and 1")
    rng = random.Random(seed)
    base = erdos_renyi(n, p, rng)
    adj = [set(a) for a in base.adjacency]
    alive = set(range(n))
    deleted = 0
    current = base
    while True:
        cycle = shortest_cycle(current)
        if cycle is None or len(cycle) >= g:
            break
        victim = max(cycle, key=lambda v: (len(adj[v]), -v))
        for u in adj[victim]:
            adj[u].discard(victim)
        adj[victim].clear()
        alive.discard(victim)
        deleted += 1
        current = Graph.from_edges(n, [(u, v) for u in range(n) for v in adj[u] if u < v])
    comps = [c for c in components(current) if c[0] in alive or len(c) > 1]
    biggest = max(comps, key=len) if comps else [0]
    result, _ = current.induced(biggest)
    gi = girth(result)
    assert gi >= g or gi == INF
    return HighGirthSample(result, gi, chromatic_upper_greedy(result), deleted, seed)
