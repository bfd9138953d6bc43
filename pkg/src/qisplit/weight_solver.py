"""Does any weighting of H make the split projection a (1, C)-quasi-isometry?

Two procedures.  :func:`solve_bruteforce` enumerates a finite grid of weights
and is exact over that grid.  :func:`solve_lp` works over positive reals:
it first tries two sound infeasibility proofs (a pair of G-pairs with the same
image whose distances differ by more than 2C; infeasibility of the metric
relaxation), then alternates between fixing one candidate path per pair of
H-vertices and solving a linear program with lazily generated shortest-path
cuts.  Its positive answers are always verified; the search itself is a
heuristic and may end UNKNOWN.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .constructions import SplitResult
from .graph_core import (
    EdgeWeighting,
    GraphError,
    GraphTooLargeError,
    Number,
    distance_matrix,
    format_number,
    hop_distances,
    parse_weight,
    shortest_path,
)
from .qi_verify import check_quasi_isometry
from .simplex import linprog_exact
from .witness import RefutationCertificate, refute_weighting

DEFAULT_GRID = ("0.5", "1", "1.5", "2", "2.5")
DEFAULT_LOWER_BOUND = Fraction(1, 1000)
RELAXATION_MAX_VERTICES = 9


@dataclass(frozen=True)
class SolveOutcome:
    status: str  # "SAT" | "UNSAT" | "UNKNOWN"
    weighting: Optional[EdgeWeighting] = None
    basis: Optional[str] = None  # for UNSAT: "exact" | "grid-exhaustive" | "hint"
    proof: Optional[dict] = None
    certificate: Optional[RefutationCertificate] = None
    reason: str = ""
    iterations: int = 0
    constraints_generated: int = 0
    integer_weighting: Optional[EdgeWeighting] = None
    meta: dict = field(default_factory=dict)


def verify_weighting(split: SplitResult, C, w: EdgeWeighting) -> bool:
    """Is the projection a (1, C)-quasi-isometry onto ``(H, w)``?"""
    w.check_owner(split.source)
    return check_quasi_isometry(split.projection, 1, C, None, w).verdict


def rounding_probe(split: SplitResult, C, w: EdgeWeighting) -> Optional[EdgeWeighting]:
    """Round every weight to the nearest integer (at least 1) and re-verify."""
    values = [max(1, math.floor(Fraction(x) + Fraction(1, 2))) for x in w.values]
    rounded = EdgeWeighting.from_values(split.source, values)
    return rounded if verify_weighting(split, C, rounded) else None


def _pair_bounds(split: SplitResult, C):
    """For each image pair ``a <= b``: (max d_G - C, min d_G + C, witnesses)."""
    g, h, phi = split.graph, split.source, split.projection
    dg = distance_matrix(g)
    hi_pair: dict = {}
    lo_pair: dict = {}
    for x in range(g.n):
        for y in range(x, g.n):
            a, b = sorted((phi(x), phi(y)))
            d = dg[x][y]
            if (a, b) not in lo_pair or d > lo_pair[a, b][0]:
                lo_pair[a, b] = (d, (x, y))
            if (a, b) not in hi_pair or d < hi_pair[a, b][0]:
                hi_pair[a, b] = (d, (x, y))
    bounds = {}
    for key in sorted(lo_pair):
        bounds[key] = (lo_pair[key][0] - C, hi_pair[key][0] + C, lo_pair[key][1], hi_pair[key][1])
    return bounds


def _spread_proof(bounds) -> Optional[dict]:
    """Two G-pairs over the same image pair whose distances differ by more than 2C."""
    for (a, b), (lo, hi, far, near) in bounds.items():
        # d_w(a, a) = 0, so a == b only needs lo <= 0
        if lo > (0 if a == b else hi):
            return {
                "kind": "pair_spread",
                "image": [a, b],
                "far_pair": list(far),
                "near_pair": list(near),
            }
    return None


def _metric_relaxation_infeasible(h_n: int, bounds) -> bool:
    """True if no metric on V(H) meets every pair's distance window.

    Any valid weighting induces such a metric, so infeasibility is a proof
    that no weighting exists.
    """
    pairs = [(a, b) for a in range(h_n) for b in range(a + 1, h_n)]
    index = {p: i for i, p in enumerate(pairs)}
    k = len(pairs)
    A, rhs = [], []
    for p in pairs:
        lo, hi, _, _ = bounds[p]
        row = [0] * k
        row[index[p]] = 1
        A.append(row)
        rhs.append(hi)
        if lo > 0:
            A.append([-v for v in row])
            rhs.append(-lo)
    for a, b, c in itertools.permutations(range(h_n), 3):
        if a < c:
            # d(a, c) <= d(a, b) + d(b, c)
            row = [0] * k
            row[index[a, c]] += 1
            row[index[tuple(sorted((a, b)))]] -= 1
            row[index[tuple(sorted((b, c)))]] -= 1
            A.append(row)
            rhs.append(0)
    return linprog_exact([0] * k, A, rhs).status == "infeasible"


def _exact_unsat(split: SplitResult, C, bounds) -> Optional[dict]:
    proof = _spread_proof(bounds)
    if proof is not None:
        return proof
    if split.source.n <= RELAXATION_MAX_VERTICES and _metric_relaxation_infeasible(
        split.source.n, bounds
    ):
        return {"kind": "metric_relaxation"}
    return None


def _grid_values(grid: Sequence) -> list[Fraction]:
    values = sorted({parse_weight(x) for x in grid})
    if not values or any(isinstance(v, float) for v in values):
        raise GraphError("grid values must be exact decimals")
    if values[0] <= 0:
        raise GraphError("grid values must be positive")
    return values


def solve_bruteforce(
    split: SplitResult,
    C,
    grid: Sequence = DEFAULT_GRID,
    edge_limit: int = 8,
    limit: int = 10**8,
) -> SolveOutcome:
    """Try every weighting with values in ``grid``, in lexicographic grid order.

    Distances are recomputed per candidate by Floyd-Warshall on integers
    (weights scaled to a common denominator), independently of the Dijkstra
    code used elsewhere; the first passing weighting is re-verified in full.
    """
    h = split.source
    values = _grid_values(grid)
    if h.m > edge_limit or len(values) ** h.m > limit:
        raise GraphTooLargeError(
            f"{len(values)}^{h.m} candidate weightings exceed the enumeration limits"
        )
    if not isinstance(C, int):
        C = parse_weight(C)
    scale = 1
    for v in values:
        scale = math.lcm(scale, v.denominator)
    ints = [int(v * scale) for v in values]
    # every G-pair, reduced to distinct (image pair, d_G) triples; kept apart
    # from the LP route's bookkeeping on purpose
    g, phi = split.graph, split.projection
    triples = set()
    for x in range(g.n):
        row = hop_distances(g, x)
        for y in range(x + 1, g.n):
            triples.add((phi(x), phi(y), row[y]))
    # pairs over a single H-vertex need d_G <= C whatever the weights
    collapsed_ok = all(d <= C for a, b, d in triples if a == b)
    checks = sorted((a, b, (d - C) * scale, (d + C) * scale) for a, b, d in triples if a != b)
    n = h.n
    big = ints[-1] * (h.m + 1) + 1
    tried = 0
    combos = itertools.product(range(len(values)), repeat=h.m) if collapsed_ok else ()
    for combo in combos:
        tried += 1
        d = [[0 if i == j else big for j in range(n)] for i in range(n)]
        for (u, v), k in zip(h.edges, combo):
            d[u][v] = d[v][u] = ints[k]
        for k in range(n):
            dk = d[k]
            for i in range(n):
                dik = d[i][k]
                di = d[i]
                for j in range(n):
                    if dik + dk[j] < di[j]:
                        di[j] = dik + dk[j]
        if all(lo <= d[a][b] <= hi for a, b, lo, hi in checks):
            w = EdgeWeighting(h, tuple(values[k] for k in combo))
            assert verify_weighting(split, C, w)
            return SolveOutcome(
                "SAT", weighting=w, iterations=tried, integer_weighting=rounding_probe(split, C, w)
            )
    return SolveOutcome(
        "UNSAT",
        basis="grid-exhaustive",
        proof={"kind": "grid", "grid": [str(v) for v in values]},
        reason=f"no weighting over a grid of {len(values)} values",
        iterations=tried,
    )


def _edge_ids(h, path) -> list[int]:
    return [h.index_of(a, b) for a, b in zip(path, path[1:])]


def solve_lp(
    split: SplitResult,
    C,
    max_rounds: int = 50,
    lower_bound=DEFAULT_LOWER_BOUND,
    accept_hint: bool = False,
    oracle_grid: Optional[Sequence] = None,
    max_cuts: int = 5000,
) -> SolveOutcome:
    """Search for a real weighting by candidate paths and shortest-path cuts.

    Variables are ``w_e >= lower_bound`` and one slack per image pair.  Every
    pair ``(a, b)`` needs ``lo <= d_w(a, b) <= hi``.  The lower side is a
    family of path constraints separated lazily by shortest paths under the
    current solution.  The upper side asks for *some* short path; it is
    linearised by fixing a candidate path per pair (softened by the slack),
    and candidates are re-chosen as current shortest paths between rounds.
    A repeated candidate set or the round cap ends the search UNKNOWN.
    """
    h = split.source
    if not isinstance(C, int):
        C = parse_weight(C)
    lb = parse_weight(lower_bound)
    bounds = _pair_bounds(split, C)

    proof = _exact_unsat(split, C, bounds)
    if proof is not None:
        return SolveOutcome("UNSAT", basis="exact", proof=proof, reason=proof["kind"])

    pairs = [(a, b) for (a, b) in bounds if a != b]
    m, k = h.m, len(pairs)
    if m + k > 200:
        raise GraphTooLargeError(f"{m + k} LP variables exceed the simplex limit")
    unit = EdgeWeighting.unit(h)
    candidates = {p: tuple(_edge_ids(h, shortest_path(h, p[0], p[1], unit))) for p in pairs}
    cuts: list[tuple[tuple[int, ...], Fraction]] = []
    cut_keys = set()
    for (a, b), (lo, _, _, _) in bounds.items():
        if a != b and h.has_edge(a, b) and lo > lb:
            key = (h.index_of(a, b),)
            cuts.append((key, Fraction(lo)))
            cut_keys.add(key)
    generated = len(cuts)
    seen = set()
    rounds = 0
    w = None
    # objective: total slack on the upper constraints
    c = [0] * m + [1] * k
    while rounds < max_rounds:
        rounds += 1
        while True:
            A, rhs = [], []
            for edges, lo in cuts:
                row = [0] * (m + k)
                for e in edges:
                    row[e] -= 1
                A.append(row)
                rhs.append(-(lo - len(edges) * lb))
            for j, p in enumerate(pairs):
                row = [0] * (m + k)
                for e in candidates[p]:
                    row[e] += 1
                row[m + j] = -1
                A.append(row)
                rhs.append(bounds[p][1] - len(candidates[p]) * lb)
            res = linprog_exact(c, A, rhs)
            if res.status != "optimal":
                return SolveOutcome(
                    "UNKNOWN", reason=f"LP {res.status}", iterations=rounds,
                    constraints_generated=generated,
                )
            w = EdgeWeighting(h, tuple(lb + x for x in res.x[:m]))
            added = 0
            for p in pairs:
                lo = bounds[p][0]
                if lo <= 0:
                    continue
                route = shortest_path(h, p[0], p[1], w)
                ids = tuple(_edge_ids(h, route))
                if sum(w.values[e] for e in ids) < lo and ids not in cut_keys:
                    cuts.append((ids, Fraction(lo)))
                    cut_keys.add(ids)
                    added += 1
            generated += added
            if not added:
                break
            if len(cuts) > max_cuts:
                return SolveOutcome(
                    "UNKNOWN", reason="cut limit", iterations=rounds,
                    constraints_generated=generated,
                )
        if res.objective == 0 and verify_weighting(split, C, w):
            return SolveOutcome(
                "SAT", weighting=w, iterations=rounds, constraints_generated=generated,
                integer_weighting=rounding_probe(split, C, w),
            )
        candidates = {
            p: tuple(_edge_ids(h, shortest_path(h, p[0], p[1], w))) for p in pairs
        }
        key = tuple(candidates[p] for p in pairs)
        if key in seen:
            return _inconclusive(split, C, w, "candidate cycling", rounds, generated,
                                 accept_hint, oracle_grid)
        seen.add(key)
    return _inconclusive(split, C, w, "round cap", rounds, generated, accept_hint, oracle_grid)


def _inconclusive(split, C, w, why, rounds, generated, accept_hint, oracle_grid) -> SolveOutcome:
    cert = None
    if w is not None and isinstance(C, int):
        cert = refute_weighting(split, w, C).certificate
    meta = {} if w is None else {"final_weights": [format_number(x) for x in w.values]}
    common = dict(iterations=rounds, constraints_generated=generated, certificate=cert, meta=meta)
    if cert is not None and oracle_grid is not None:
        oracle = solve_bruteforce(split, C, oracle_grid)
        if oracle.status == "SAT":
            return SolveOutcome(
                "SAT", weighting=oracle.weighting, reason=f"{why}; grid oracle found a weighting",
                integer_weighting=oracle.integer_weighting, **common,
            )
        return SolveOutcome(
            "UNSAT", basis="hint", proof=oracle.proof,
            reason=f"{why}; final weighting refuted and grid oracle concurs", **common,
        )
    if cert is not None and accept_hint:
        return SolveOutcome("UNSAT", basis="hint", reason=f"{why}; final weighting refuted", **common)
    return SolveOutcome("UNKNOWN", reason=why, **common)
