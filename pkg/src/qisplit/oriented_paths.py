"""Searching oriented graphs for directed, alternating and general oriented paths."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .constructions import Orientation
from .graph_core import GraphError, Path, is_proper_coloring

DEFAULT_BUDGET = 10**7

FORWARD = True
BACKWARD = False


@dataclass(frozen=True)
class PathPattern:
    """Edge directions of an oriented path; ``directions[i]`` covers edge ``v_i v_{i+1}``."""

    directions: tuple[bool, ...]

    def __post_init__(self) -> None:
        if not self.directions:
            raise GraphError("a pattern needs at least one edge")

    @classmethod
    def directed(cls, hop: int) -> "PathPattern":
        return cls((FORWARD,) * hop)

    @classmethod
    def alternating(cls, hop: int) -> "PathPattern":
        # edge i (1-based) is forward for odd i
        return cls(tuple(i % 2 == 0 for i in range(hop)))

    @classmethod
    def from_string(cls, text: str) -> "PathPattern":
        """``"+-+"`` style: ``+`` forward, ``-`` backward."""
        if set(text) - {"+", "-"}:
            raise GraphError(f"bad pattern {text!r}")
        return cls(tuple(c == "+" for c in text))

    @property
    def hop(self) -> int:
        return len(self.directions)

    def __str__(self) -> str:
        return "".join("+" if d else "-" for d in self.directions)

    def matches(self, o: Orientation, vertices) -> bool:
        vertices = tuple(vertices)
        if len(vertices) != self.hop + 1 or len(set(vertices)) != len(vertices):
            return False
        for d, a, b in zip(self.directions, vertices, vertices[1:]):
            if not (o.is_arc(a, b) if d else o.is_arc(b, a)):
                return False
        return True


@dataclass(frozen=True)
class PatternSearch:
    status: Literal["found", "absent", "budget"]
    witnesses: tuple[Path, ...]
    expansions: int

    @property
    def witness(self) -> Optional[Path]:
        return self.witnesses[0] if self.witnesses else None


def search_pattern(
    o: Orientation, pattern: PathPattern, budget: int = DEFAULT_BUDGET, limit: int = 1
) -> PatternSearch:
    """Backtracking search collecting up to ``limit`` realizations of ``pattern``.

    Start vertices and neighbours are tried in ascending order.  Status is
    ``"absent"`` only when the search space was exhausted without a hit, which
    proves the pattern does not occur.
    """
    outs, ins = o.out_neighbors, o.in_neighbors
    dirs = pattern.directions
    hop = pattern.hop
    found: list[Path] = []
    expansions = 0
    path: list[int] = []
    on_path = [False] * o.graph.n

    class _Stop(Exception):
        pass

    def extend(v: int) -> None:
        nonlocal expansions
        expansions += 1
        if expansions > budget:
            raise _Stop
        path.append(v)
        on_path[v] = True
        depth = len(path) - 1
        if depth == hop:
            witness = tuple(path)
            assert pattern.matches(o, witness)
            found.append(witness)
            if len(found) >= limit:
                raise _Stop
        else:
            for u in (outs[v] if dirs[depth] else ins[v]):
                if not on_path[u]:
                    extend(u)
        path.pop()
        on_path[v] = False

    status = "absent"
    try:
        for s in range(o.graph.n):
            extend(s)
    except _Stop:
        status = "found" if len(found) >= limit else "budget"
    if status == "absent" and found:
        status = "found"
    return PatternSearch(status, tuple(found), min(expansions, budget))


def find_pattern(
    o: Orientation, pattern: PathPattern, budget: int = DEFAULT_BUDGET
) -> PatternSearch:
    return search_pattern(o, pattern, budget, limit=1)


def _reaches(out: list[set], src: int, dst: int) -> bool:
    stack, seen = [src], {src}
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        for v in out[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def gallai_roy_directed(o: Orientation) -> Path:
    """Directed path with at least ``chi - 1`` edges, built constructively.

    Arcs are admitted in edge order unless they would close a directed cycle.
    Labelling every vertex by the longest admitted path ending there gives a
    proper colouring of the whole graph (a rejected arc ``u -> v`` has ``v``
    reaching ``u``, hence a smaller label), so the number of labels is at
    least the chromatic number.
    """
    g = o.graph
    out: list[set] = [set() for _ in range(g.n)]
    inn: list[list[int]] = [[] for _ in range(g.n)]
    for a, b in o.arcs:
        if not _reaches(out, b, a):
            out[a].add(b)
            inn[b].append(a)

    indeg = [len(inn[v]) for v in range(g.n)]
    ready = sorted(v for v in range(g.n) if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for u in sorted(out[v]):
            indeg[u] -= 1
            if indeg[u] == 0:
                ready.append(u)
        ready.sort()
    level = [0] * g.n
    pred = [-1] * g.n
    for v in order:
        for u in sorted(inn[v]):
            if level[u] + 1 > level[v]:
                level[v] = level[u] + 1
                pred[v] = u
    if not is_proper_coloring(g, level):
        raise AssertionError("longest-path levels are not a proper colouring")
    if g.n == 0:
        return ()
    end = max(range(g.n), key=lambda v: (level[v], -v))
    path = [end]
    while pred[path[-1]] != -1:
        path.append(pred[path[-1]])
    witness = tuple(reversed(path))
    assert len(witness) == 1 or PathPattern.directed(len(witness) - 1).matches(o, witness)
    return witness


def find_for_witness(
    o: Orientation,
    hop: int,
    kind: Literal["directed", "alternating"],
    budget: int = DEFAULT_BUDGET,
) -> Optional[Path]:
    """An oriented path of exactly ``hop`` edges of the given kind, or None."""
    if hop < 1:
        raise GraphError("hop must be at least 1")
    if kind == "directed":
        long = gallai_roy_directed(o)
        if len(long) > hop:
            return long[: hop + 1]
        pattern = PathPattern.directed(hop)
    elif kind == "alternating":
        pattern = PathPattern.alternating(hop)
    else:
        raise GraphError(f"unknown path kind {kind!r}")
    return find_pattern(o, pattern, budget).witness
