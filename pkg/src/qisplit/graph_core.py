"""Finite graphs, edge weightings, vertex maps and exact metric primitives.

Vertices are the integers ``0..n-1``.  Edges are stored once, as sorted pairs
``(u, v)`` with ``u < v``, in ascending order; every per-edge array in the
package (weights, orientations) is parallel to :attr:`Graph.edges`.

Weights are exact rationals (:class:`fractions.Fraction`) whenever every input
has at most six decimal places, and floats otherwise.  Exact weightings are run
through the shortest-path routines as scaled integers, so arithmetic such as
``1.5 * 4C`` never picks up rounding error.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

Number = Union[int, Fraction, float]
Edge = tuple[int, int]
Path = tuple[int, ...]

INF = math.inf
TOL = 1e-9
MAX_EXACT_PLACES = 6
DEFAULT_CHROMATIC_LIMIT = 30


class GraphError(ValueError):
    pass


class InvalidVertexError(GraphError):
    pass


class InvalidPathError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class WeightingMismatchError(GraphError):
    pass


class GraphTooLargeError(GraphError):
    """Raised when an exponential routine is asked to run past its size guard."""


def leq(a: Number, b: Number) -> bool:
    """``a <= b``; exact for rationals, within :data:`TOL` once a float is involved."""
    if isinstance(a, float) or isinstance(b, float):
        return a <= b + TOL
    return a <= b


def lt(a: Number, b: Number) -> bool:
    """Strict ``a < b``, the negation of ``leq(b, a)``."""
    return not leq(b, a)


def num_eq(a: Number, b: Number) -> bool:
    return leq(a, b) and leq(b, a)


def as_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Build with :meth:`from_edges`, which normalizes and sorts the edge list;
    the raw constructor expects the canonical form and validates it.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        prev = None
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {(u, v)} is not a canonical pair below n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise GraphError("edges must be sorted and free of duplicates")
            prev = (u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            for x in (u, v):
                if not 0 <= x < n:
                    raise InvalidVertexError(f"vertex {x} out of range for n={n}")
            pair = as_edge(u, v)
            if pair in seen:
                raise GraphError(f"duplicate edge {pair}")
            seen.add(pair)
        return cls(n, tuple(sorted(seen)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return as_edge(u, v) in self.edge_index

    def index_of(self, u: int, v: int) -> int:
        try:
            return self.edge_index[as_edge(u, v)]
        except KeyError:
            raise InvalidPathError(f"{u}-{v} is not an edge") from None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InvalidVertexError(f"vertex {v!r} out of range for n={self.n}")

    def subgraph_edges(self, keep: Iterable[int]) -> "Graph":
        """Spanning subgraph on the edges with the given indices."""
        return Graph(self.n, tuple(self.edges[i] for i in sorted(set(keep))))

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1`` in the order given.

        Returns the subgraph and the tuple of original labels.
        """
        label = {v: i for i, v in enumerate(vertices)}
        edges = [
            (label[u], label[v]) for u, v in self.edges if u in label and v in label
        ]
        return Graph.from_edges(len(vertices), edges), tuple(vertices)


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def require_connected(g: Graph, what: str = "graph") -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"{what} must be connected")


# ---------------------------------------------------------------------------
# weights


def parse_weight(value: Union[str, int, float, Fraction]) -> Number:
    """Parse one weight.

    Decimal strings (and numbers, via their shortest decimal repr) with at most
    six decimal places become exact ``Fraction``s, as do ``"p/q"`` strings;
    anything finer falls back to ``float``.
    """
    if isinstance(value, bool):
        raise GraphError("booleans are not weights")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    text = repr(value) if isinstance(value, float) else str(value).strip()
    if "/" in text:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise GraphError(f"cannot parse weight {value!r}") from None
    try:
        dec = Decimal(text)
    except InvalidOperation:
        raise GraphError(f"cannot parse weight {value!r}") from None
    if not dec.is_finite():
        raise GraphError(f"weight {value!r} is not finite")
    exponent = dec.as_tuple().exponent
    if -exponent <= MAX_EXACT_PLACES:
        return Fraction(dec)
    return float(dec)


def format_number(x: Number) -> str:
    """Inverse of :func:`parse_weight`: a decimal with at most six places, else ``p/q``."""
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    places = max(twos, fives)
    if den != 1 or places > MAX_EXACT_PLACES:
        return f"{x.numerator}/{x.denominator}"

    scaled = x * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


@dataclass(frozen=True)
class EdgeWeighting:
    """Strictly positive weights, parallel to ``graph.edges``."""

    graph: Graph
    values: tuple[Number, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.graph.m:
            raise WeightingMismatchError(
                f"{len(self.values)} weights for {self.graph.m} edges"
            )
        kinds = {isinstance(x, float) for x in self.values}
        if len(kinds) > 1:
            raise GraphError("weights must be all exact or all float")
        for x in self.values:
            if not x > 0:
                raise GraphError(f"weights must be strictly positive, got {x}")

    @classmethod
    def from_values(cls, g: Graph, values: Iterable) -> "EdgeWeighting":
        parsed = [parse_weight(v) for v in values]
        if any(isinstance(x, float) for x in parsed):
            parsed = [float(x) for x in parsed]
        return cls(g, tuple(parsed))

    @classmethod
    def unit(cls, g: Graph) -> "EdgeWeighting":
        return cls(g, (Fraction(1),) * g.m)

    @classmethod
    def constant(cls, g: Graph, value) -> "EdgeWeighting":
        return cls.from_values(g, [value] * g.m)

    @property
    def exact(self) -> bool:
        return not any(isinstance(x, float) for x in self.values)

    def weight(self, u: int, v: int) -> Number:
        return self.values[self.graph.index_of(u, v)]

    def is_integral(self) -> bool:
        return self.exact and all(Fraction(x).denominator == 1 for x in self.values)

    @cached_property
    def _scaled(self) -> tuple[int, tuple[int, ...]]:
        scale = 1
        for x in self.values:
            scale = math.lcm(scale, Fraction(x).denominator)
        return scale, tuple(int(x * scale) for x in self.values)

    def check_owner(self, g: Graph) -> None:
        if self.graph != g:
            raise WeightingMismatchError("weighting belongs to a different graph")


# ---------------------------------------------------------------------------
# paths and distances


def validate_path(g: Graph, p: Sequence[int]) -> Path:
    p = tuple(p)
    if not p:
        raise InvalidPathError("a path needs at least one vertex")
    for v in p:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise InvalidPathError(f"vertex {v!r} not in graph")
    if len(set(p)) != len(p):
        raise InvalidPathError(f"path {p} repeats a vertex")
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            raise InvalidPathError(f"{a}-{b} is not an edge")
    return p


def hop_length(p: Sequence[int]) -> int:
    return len(p) - 1


def path_length(w: EdgeWeighting, p: Sequence[int]) -> Number:
    p = validate_path(w.graph, p)
    total: Number = 0.0 if not w.exact else Fraction(0)
    for a, b in zip(p, p[1:]):
        total += w.weight(a, b)
    return total


def hop_distances(g: Graph, source: int) -> list:
    """BFS hop counts from ``source``; unreachable vertices get :data:`INF`."""
    g.check_vertex(source)
    dist: list = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] is INF:
                dist[v] = du
                queue.append(v)
    return dist


def _dijkstra(adj, n: int, source: int, lengths: dict) -> list:
    dist: list = [INF] * n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v in adj[u]:
            nd = d + lengths[u, v]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def _directed_lengths(w: EdgeWeighting, scaled: bool) -> dict:
    vals = w._scaled[1] if scaled else w.values
    out = {}
    for (u, v), x in zip(w.graph.edges, vals):
        out[u, v] = x
        out[v, u] = x
    return out


def weighted_distances(g: Graph, w: EdgeWeighting, source: int) -> list:
    """Exact single-source shortest-path lengths of ``(g, w)``."""
    w.check_owner(g)
    g.check_vertex(source)
    require_connected(g)
    if w.exact:
        scale, _ = w._scaled
        raw = _dijkstra(g.adjacency, g.n, source, _directed_lengths(w, True))
        return [Fraction(d, scale) for d in raw]
    return [float(d) for d in _dijkstra(g.adjacency, g.n, source, _directed_lengths(w, False))]


def distances_from(g: Graph, source: int, w: Optional[EdgeWeighting] = None) -> list:
    if w is None:
        require_connected(g)
        return hop_distances(g, source)
    return weighted_distances(g, w, source)


def distance_matrix(g: Graph, w: Optional[EdgeWeighting] = None) -> list[list]:
    """All-pairs distances (hop counts when ``w`` is None); graph must be connected."""
    require_connected(g)
    if w is None:
        return [hop_distances(g, s) for s in range(g.n)]
    w.check_owner(g)
    if w.exact:
        scale, _ = w._scaled
        lengths = _directed_lengths(w, True)
        rows = [_dijkstra(g.adjacency, g.n, s, lengths) for s in range(g.n)]
        return [[Fraction(d, scale) for d in row] for row in rows]
    lengths = _directed_lengths(w, False)
    return [[float(d) for d in _dijkstra(g.adjacency, g.n, s, lengths)] for s in range(g.n)]


def shortest_path(
    g: Graph, source: int, target: int, w: Optional[EdgeWeighting] = None
) -> Path:
    """A shortest path with deterministic tie-breaking.

    Among paths of minimum length prefer fewer hops, then the lexicographically
    smallest vertex sequence.  Keys grow monotonically under extension, so a
    label-setting search over ``(length, hops, sequence)`` is exact.
    """
    g.check_vertex(source)
    g.check_vertex(target)
    if w is not None:
        w.check_owner(g)
        scaled = w.exact
        lengths = _directed_lengths(w, scaled)
    else:
        lengths = None
    best: dict[int, tuple] = {}
    heap = [(0, 0, (source,))]
    while heap:
        d, h, seq = heapq.heappop(heap)
        u = seq[-1]
        if u in best:
            continue
        best[u] = (d, h, seq)
        if u == target:
            return seq
        for v in g.adjacency[u]:
            if v not in best:
                step = 1 if lengths is None else lengths[u, v]
                heapq.heappush(heap, (d + step, h + 1, seq + (v,)))
    raise DisconnectedGraphError(f"no path from {source} to {target}")


def is_geodesic(g: Graph, p: Sequence[int], w: Optional[EdgeWeighting] = None) -> bool:
    p = validate_path(g, p)
    length = hop_length(p) if w is None else path_length(w, p)
    if w is None:
        d = hop_distances(g, p[0])[p[-1]]
    else:
        d = weighted_distances(g, w, p[0])[p[-1]]
    return num_eq(length, d)


def diameter(g: Graph, w: Optional[EdgeWeighting] = None) -> Number:
    if g.n == 0:
        return 0
    return max(max(row) for row in distance_matrix(g, w))


# ---------------------------------------------------------------------------
# girth


def shortest_cycle(g: Graph) -> Optional[Path]:
    """A shortest cycle as a vertex sequence (without repeating the start), or None.

    BFS from every root; a non-tree edge ``uv`` closes a closed walk of length
    ``d(u) + d(v) + 1``.  The global minimum of these is attained by a simple
    cycle through its root, so the reconstruction below is a genuine cycle.
    """
    best = INF
    found = None
    adj = g.adjacency
    for r in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[r] = 0
        queue = deque([r])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for v in adj[u]:
                if dist[v] == -1:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    length = dist[u] + dist[v] + 1
                    if length < best:
                        best = length
                        found = (u, v, list(parent))
    if found is None:
        return None
    u, v, parent = found

    def to_root(x):
        chain = [x]
        while parent[chain[-1]] != -1:
            chain.append(parent[chain[-1]])
        return chain[::-1]

    pu, pv = to_root(u), to_root(v)
    k = 0
    while k < min(len(pu), len(pv)) and pu[k] == pv[k]:
        k += 1
    cycle = tuple(pu[k - 1 :] + pv[k:][::-1])
    assert len(cycle) == best and len(set(cycle)) == len(cycle)
    return cycle


def girth(g: Graph):
    """Length of a shortest cycle; :data:`INF` for forests."""
    cycle = shortest_cycle(g)
    return INF if cycle is None else len(cycle)


# ---------------------------------------------------------------------------
# colouring


def greedy_coloring(g: Graph, order: Optional[Sequence[int]] = None) -> list[int]:
    """First-fit colouring along ``order`` (default: ascending vertices)."""
    if order is None:
        order = range(g.n)
    elif sorted(order) != list(range(g.n)):
        raise GraphError("order must be a permutation of the vertices")
    color = [-1] * g.n
    for v in order:
        taken = {color[u] for u in g.adjacency[v]}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    return color


def is_proper_coloring(g: Graph, color: Sequence[int]) -> bool:
    return len(color) == g.n and all(color[u] != color[v] for u, v in g.edges)


def chromatic_upper_greedy(g: Graph, order: Optional[Sequence[int]] = None) -> int:
    color = greedy_coloring(g, order)
    assert is_proper_coloring(g, color)
    return max(color) + 1 if color else 0


def _dsatur_order_coloring(g: Graph) -> list[int]:
    color = [-1] * g.n
    sat: list[set] = [set() for _ in range(g.n)]
    for _ in range(g.n):
        v = max(
            (x for x in range(g.n) if color[x] == -1),
            key=lambda x: (len(sat[x]), g.degree(x), -x),
        )
        c = 0
        while c in sat[v]:
            c += 1
        color[v] = c
        for u in g.adjacency[v]:
            sat[u].add(c)
    return color


def _greedy_clique(g: Graph) -> int:
    best = 1 if g.n else 0
    adj = [set(a) for a in g.adjacency]
    for s in range(g.n):
        clique = [s]
        cand = set(adj[s])
        while cand:
            v = max(cand, key=lambda x: (len(adj[x] & cand), -x))
            clique.append(v)
            cand &= adj[v]
        best = max(best, len(clique))
    return best


def chromatic_number_exact(g: Graph, vertex_limit: int = DEFAULT_CHROMATIC_LIMIT) -> int:
    """Exact chromatic number by DSATUR branch and bound.

    The DSATUR greedy colouring gives the starting upper bound and a greedy
    clique the lower bound; the search stops as soon as they meet.
    """
    if g.n > vertex_limit:
        raise GraphTooLargeError(
            f"exact chromatic number limited to {vertex_limit} vertices, got {g.n}"
        )
    if g.n == 0:
        return 0
    upper = max(_dsatur_order_coloring(g)) + 1
    lower = _greedy_clique(g)
    if lower == upper:
        return upper

    adj = g.adjacency
    color = [-1] * g.n
    # counts[v][c]: number of coloured neighbours of v using colour c
    counts = [[0] * g.n for _ in range(g.n)]
    sat = [0] * g.n
    best = upper

    def assign(v, c, delta):
        for u in adj[v]:
            before = counts[u][c]
            counts[u][c] += delta
            if before == 0 and delta == 1:
                sat[u] += 1
            elif before == 1 and delta == -1:
                sat[u] -= 1

    def search(colored, used):
        nonlocal best
        if colored == g.n:
            best = used
            return best == lower
        v = -1
        key = None
        for x in range(g.n):
            if color[x] == -1:
                k = (sat[x], len(adj[x]))
                if key is None or k > key:
                    v, key = x, k
        for c in range(min(used + 1, best - 1)):
            if c >= best - 1:
                break
            if counts[v][c]:
                continue
            color[v] = c
            assign(v, c, 1)
            done = search(colored + 1, max(used, c + 1))
            assign(v, c, -1)
            color[v] = -1
            if done:
                return True
        return False

    search(0, 0)
    return best


@dataclass(frozen=True)
class VertexMap:
    """Total map from the vertices of ``domain`` to those of ``codomain``."""

    domain: Graph
    codomain: Graph
    image: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.image) != self.domain.n:
            raise GraphError(
                f"map has {len(self.image)} images for {self.domain.n} vertices"
            )
        for y in self.image:
            if not (isinstance(y, int) and 0 <= y < self.codomain.n):
                raise InvalidVertexError(f"image vertex {y!r} not in codomain")

    def __call__(self, x: int) -> int:
        return self.image[x]

    def compose(self, other: "VertexMap") -> "VertexMap":
        """``other ∘ self``."""
        if other.domain != self.codomain:
            raise GraphError("maps do not compose")
        return VertexMap(self.domain, other.codomain, tuple(other.image[y] for y in self.image))

    @classmethod
    def identity(cls, g: Graph) -> "VertexMap":
        return cls(g, g, tuple(range(g.n)))
