"""Refuting weightings: the light/heavy case analysis run as an algorithm.

Given a split pair ``(G, H, phi)``, a weighting ``w`` of ``H`` and an additive
constant ``C``, :func:`refute_weighting` looks for a pair of vertices of ``G``
whose distance differs from the weighted distance of their images by more
than ``C``.  It first follows the argument that must succeed on large-girth,
large-chromatic inputs and falls back to scanning every pair, so ``None``
means the map really is a (1, C)-quasi-isometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

from .constructions import SplitResult
from .graph_core import (
    EdgeWeighting,
    Graph,
    GraphError,
    InvalidPathError,
    Number,
    Path,
    chromatic_upper_greedy,
    distance_matrix,
    girth,
    hop_distances,
    leq,
    lt,
    num_eq,
    shortest_path,
    validate_path,
    weighted_distances,
)
from .oriented_paths import (
    DEFAULT_BUDGET,
    PathPattern,
    find_for_witness,
    search_pattern,
)
from .qi_verify import check_quasi_isometry

LIGHT_THRESHOLD = Fraction(3, 2)

SHRINK = "d_G > d_Hw + C"
STRETCH = "d_G < d_Hw - C"

Case = Literal["edge_too_heavy", "light_directed", "heavy_alternating", "direct"]
CASES = ("edge_too_heavy", "light_directed", "heavy_alternating", "direct")


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RefutationCertificate:
    case: str
    pair: tuple[int, int]
    d_G: Number
    d_Hw: Number
    C: int
    inequality: str
    supporting_path: Optional[Path] = None


@dataclass(frozen=True)
class LightHeavySplit:
    threshold: Number
    light: Graph
    heavy: Graph


@dataclass(frozen=True)
class SearchRecord:
    side: str
    kind: str
    candidates: int
    status: str


@dataclass(frozen=True)
class RefutationOutcome:
    certificate: Optional[RefutationCertificate]
    searches: tuple[SearchRecord, ...] = field(default=())


def violated(d_g: Number, d_hw: Number, C) -> Optional[str]:
    """Which (if any) of the two (1, C) bounds the distance pair breaks."""
    if lt(d_hw + C, d_g):
        return SHRINK
    if lt(d_g, d_hw - C):
        return STRETCH
    return None


def light_heavy_split(h: Graph, w: EdgeWeighting, threshold=LIGHT_THRESHOLD) -> LightHeavySplit:
    """Spanning subgraphs of edges with weight ``<= threshold`` and ``> threshold``."""
    w.check_owner(h)
    light = [i for i, x in enumerate(w.values) if leq(x, threshold)]
    heavy = sorted(set(range(h.m)) - set(light))
    return LightHeavySplit(threshold, h.subgraph_edges(light), h.subgraph_edges(heavy))


def _nongeodesic_prefix_search(g: Graph, dist, length_of, max_hop: int, budget: int):
    """Shortest-first DFS for a non-geodesic path of at most ``max_hop`` edges.

    Only geodesic prefixes are extended; a minimal non-geodesic path has all
    of its prefixes geodesic, so the search is complete.
    """
    steps = 0
    for s in range(g.n):
        row = dist[s]
        path = [s]
        on_path = {s}

        def dfs(v, length):
            nonlocal steps
            if len(path) - 1 >= max_hop:
                return None
            for u in g.adjacency[v]:
                if u in on_path:
                    continue
                steps += 1
                if steps > budget:
                    raise SearchBudgetExceeded(f"path scan exceeded {budget} steps")
                new = length + length_of(v, u)
                path.append(u)
                if lt(row[u], new):
                    return tuple(path)
                on_path.add(u)
                hit = dfs(u, new)
                on_path.discard(u)
                path.pop()
                if hit is not None:
                    return hit
            return None

        hit = dfs(s, 0)
        if hit is not None:
            return hit
    return None


def check_claim_geodesic_unit(g: Graph, C: int, budget: int = DEFAULT_BUDGET) -> Optional[Path]:
    """A path of at most ``10C`` edges that is not a shortest path, or None.

    Girth ``>= 20C + 1`` rules such paths out (two distinct paths between the
    same ends would close a cycle of length ``<= 20C``), so the scan is
    skipped in that case.
    """
    if girth(g) >= 20 * C + 1:
        return None
    dist = [hop_distances(g, s) for s in range(g.n)]
    return _nongeodesic_prefix_search(g, dist, lambda a, b: 1, 10 * C, budget)


def check_claim_hop_geodesic(
    h: Graph, w: EdgeWeighting, C: int, budget: int = DEFAULT_BUDGET
) -> Optional[Path]:
    """A path of at most ``4C`` edges that is not geodesic in ``(h, w)``, or None."""
    dist = distance_matrix(h, w)
    return _nongeodesic_prefix_search(h, dist, w.weight, 4 * C, budget)


class _Distances:
    """Lazily computed rows of d_G and d_(H,w)."""

    def __init__(self, split: SplitResult, w: EdgeWeighting):
        self.split = split
        self.w = w
        self._g: dict[int, list] = {}
        self._h: dict[int, list] = {}

    def g(self, x: int, y: int) -> Number:
        if x not in self._g:
            self._g[x] = hop_distances(self.split.graph, x)
        return self._g[x][y]

    def h(self, a: int, b: int) -> Number:
        if a not in self._h:
            self._h[a] = weighted_distances(self.split.source, self.w, a)
        return self._h[a][b]

    def certificate(self, case, x, y, C, path=None, want=None):
        phi = self.split.projection
        d_g = self.g(x, y)
        d_hw = self.h(phi(x), phi(y))
        ineq = violated(d_g, d_hw, C)
        if ineq is None or (want is not None and ineq != want):
            return None
        return RefutationCertificate(case, (x, y), d_g, d_hw, C, ineq, path)


def _check_inputs(split: SplitResult, w: EdgeWeighting, C) -> None:
    w.check_owner(split.source)
    if not (isinstance(C, int) and C >= 0):
        raise GraphError("C must be a nonnegative integer")


def check_claim_edge_weight(
    split: SplitResult, w: EdgeWeighting, C: int, _dist: Optional[_Distances] = None
) -> Optional[RefutationCertificate]:
    """Certificate built from an edge heavier than ``C + 1``, if one exists.

    If such an edge ``uv`` is also far apart in ``(H, w)``, the edge of ``G``
    joining the copies of ``u`` and ``v`` is the witness.  Otherwise the short
    weighted ``uv``-path avoids ``uv``; a vertex ``x`` on it that is far from
    ``u`` in hops gives the pair ``(u+, x+)``.
    """
    _check_inputs(split, w, C)
    h = split.source
    dist = _dist or _Distances(split, w)
    limit = C + 1
    for i, ((u, v), x) in enumerate(zip(h.edges, w.values)):
        if leq(x, limit):
            continue
        a, b = split.orientation.arcs[i]
        if lt(limit, dist.h(u, v)):
            cert = dist.certificate(
                "edge_too_heavy", split.plus_of[a], split.minus_of[b], C, (a, b), STRETCH
            )
            if cert is not None:
                return cert
            continue
        route = shortest_path(h, u, v, w)
        hops = hop_distances(h, u)
        far = max(route, key=lambda z: (hops[z], -z))
        if hops[far] < 2 * C + 2:
            continue
        k = route.index(far)
        cert = dist.certificate(
            "edge_too_heavy", split.plus_of[u], split.plus_of[far], C, route[: k + 1], SHRINK
        )
        if cert is not None:
            return cert
    return None


def refute_weighting(
    split: SplitResult,
    w: EdgeWeighting,
    C: int,
    threshold=LIGHT_THRESHOLD,
    budget: int = DEFAULT_BUDGET,
    candidate_limit: int = 64,
) -> RefutationOutcome:
    """Find a pair of ``G`` certifying that ``phi`` is not a (1, C)-quasi-isometry.

    Order of attempts: an overweight edge; then, for the light and heavy
    subgraphs in decreasing order of greedy chromatic bound, a directed
    (light) or alternating (heavy) path with ``4C`` edges; finally every pair
    of ``G``.  Every certificate is checked against recomputed distances.
    """
    _check_inputs(split, w, C)
    dist = _Distances(split, w)
    searches: list[SearchRecord] = []

    cert = check_claim_edge_weight(split, w, C, dist)
    if cert is not None:
        return RefutationOutcome(cert)

    hop = 4 * C
    if hop >= 1:
        parts = light_heavy_split(split.source, w, threshold)
        sides = [("light", parts.light), ("heavy", parts.heavy)]
        sides.sort(key=lambda s: -chromatic_upper_greedy(s[1]))
        for side, sub in sides:
            o = split.orientation.restrict(sub)
            if side == "light":
                kind, case, want = "directed", "light_directed", SHRINK
                pattern = PathPattern.directed(hop)
            else:
                kind, case, want = "alternating", "heavy_alternating", STRETCH
                pattern = PathPattern.alternating(hop)
            first = find_for_witness(o, hop, kind, budget)
            if first is None:
                searches.append(SearchRecord(side, kind, 0, "absent-or-budget"))
                continue
            found = search_pattern(o, pattern, budget, candidate_limit)
            candidates = [first] + [p for p in found.witnesses if p != first]
            for path in candidates:
                # both readings end at the + copy: v0+ ... v_{4C}+ has 8C edges,
                # u0+ u1- u2+ ... u_{4C}+ has 4C
                cert = dist.certificate(
                    case, split.plus_of[path[0]], split.plus_of[path[-1]], C, path, want
                )
                if cert is not None:
                    return RefutationOutcome(cert, tuple(searches))
            searches.append(SearchRecord(side, kind, len(candidates), found.status))

    report = check_quasi_isometry(split.projection, 1, C, None, w)
    for v in (report.upper_violation, report.lower_violation):
        if v is not None:
            cert = dist.certificate("direct", v.x, v.y, C)
            assert cert is not None
            return RefutationOutcome(cert, tuple(searches))
    assert report.verdict
    return RefutationOutcome(None, tuple(searches))


def verify_certificate(
    split: SplitResult, w: EdgeWeighting, C: int, cert: RefutationCertificate
) -> bool:
    """Recompute both distances from scratch and confirm the recorded inequality."""
    try:
        w.check_owner(split.source)
        g = split.graph
        x, y = cert.pair
        g.check_vertex(x)
        g.check_vertex(y)
        if cert.case not in CASES or cert.C != C:
            return False
        if cert.supporting_path is not None:
            validate_path(split.source, cert.supporting_path)
    except (GraphError, InvalidPathError, TypeError, ValueError):
        return False
    phi = split.projection
    d_g = hop_distances(g, x)[y]
    d_hw = weighted_distances(split.source, w, phi(x))[phi(y)]
    if not (num_eq(d_g, cert.d_G) and num_eq(d_hw, cert.d_Hw)):
        return False
    return violated(d_g, d_hw, C) == cert.inequality
