"""Checking whether a vertex map is an (L, C)-quasi-isometry."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph_core import (
    EdgeWeighting,
    Graph,
    GraphError,
    GraphTooLargeError,
    Number,
    VertexMap,
    distance_matrix,
    leq,
    lt,
    parse_weight,
    require_connected,
)

DEFAULT_MAP_LIMIT = 10**8


@dataclass(frozen=True)
class Violation:
    x: int
    y: int
    d_domain: Number
    d_codomain: Number


@dataclass(frozen=True)
class QIReport:
    L: Number
    C: Number
    verdict: bool
    upper_violation: Optional[Violation]
    lower_violation: Optional[Violation]
    surjectivity_radius: Number
    farthest_uncovered: Optional[int]
    tight_C_for_L: Number


def _parameter(value, name: str) -> Number:
    x = parse_weight(value)
    if x < 0:
        raise GraphError(f"{name} must be nonnegative")
    return x


def _check_weights(g: Graph, w: Optional[EdgeWeighting]) -> None:
    if w is not None:
        w.check_owner(g)


def check_quasi_isometry(
    phi: VertexMap,
    L,
    C,
    domain_weights: Optional[EdgeWeighting] = None,
    codomain_weights: Optional[EdgeWeighting] = None,
) -> QIReport:
    """Exhaustively test ``phi`` against both distance bounds and C-density.

    An upper violation is a pair with ``d_H > L d_G + C``, a lower one a pair
    with ``d_G / L - C > d_H``; each slot keeps the worst offender (first pair
    in ``(x, y)`` order on ties).
    """
    L = _parameter(L, "L")
    C = _parameter(C, "C")
    if L < 1:
        raise GraphError("L must be at least 1")
    g, h = phi.domain, phi.codomain
    require_connected(g, "domain")
    require_connected(h, "codomain")
    _check_weights(g, domain_weights)
    _check_weights(h, codomain_weights)
    dg = distance_matrix(g, domain_weights)
    dh = distance_matrix(h, codomain_weights)
    return _report(phi, L, C, dg, dh)


def _report(phi: VertexMap, L, C, dg, dh) -> QIReport:
    img = phi.image
    zero = 0.0 if isinstance(L, float) else Fraction(0)
    worst_up, up_pair = None, None
    worst_low, low_pair = None, None
    for x in range(len(img)):
        row_g, row_h = dg[x], dh[img[x]]
        for y in range(x + 1, len(img)):
            a, b = row_g[y], row_h[img[y]]
            up = b - L * a
            low = a / L - b
            if worst_up is None or up > worst_up:
                worst_up, up_pair = up, (x, y, a, b)
            if worst_low is None or low > worst_low:
                worst_low, low_pair = low, (x, y, a, b)

    radius, far = zero, None
    image_set = sorted(set(img))
    for y in range(phi.codomain.n):
        r = min(dh[y][z] for z in image_set) if image_set else zero
        if far is None or r > radius:
            radius, far = r, y
    tight = max([zero, radius] + [s for s in (worst_up, worst_low) if s is not None])

    upper = Violation(*up_pair) if worst_up is not None and lt(C, worst_up) else None
    lower = Violation(*low_pair) if worst_low is not None and lt(C, worst_low) else None
    verdict = upper is None and lower is None and leq(radius, C)
    return QIReport(
        L=L,
        C=C,
        verdict=verdict,
        upper_violation=upper,
        lower_violation=lower,
        surjectivity_radius=radius,
        farthest_uncovered=far if not leq(radius, C) else None,
        tight_C_for_L=tight,
    )


def minimal_additive(
    phi: VertexMap,
    L,
    domain_weights: Optional[EdgeWeighting] = None,
    codomain_weights: Optional[EdgeWeighting] = None,
) -> Number:
    """Smallest C for which ``phi`` is an (L, C)-quasi-isometry."""
    return check_quasi_isometry(phi, L, 0, domain_weights, codomain_weights).tight_C_for_L


def exists_qi_map_bruteforce(
    g: Graph,
    h: Graph,
    L,
    C,
    codomain_weights: Optional[EdgeWeighting] = None,
    domain_weights: Optional[EdgeWeighting] = None,
    limit: int = DEFAULT_MAP_LIMIT,
) -> Optional[VertexMap]:
    """First (L, C)-quasi-isometry ``g -> h`` in lexicographic order of images, or None.

    Every map is considered; partial maps are abandoned as soon as one of
    their pairs breaks a distance bound, which cannot be repaired by the
    remaining choices.  None therefore proves that no such map exists.
    """
    if h.n ** g.n > limit:
        raise GraphTooLargeError(f"{h.n}^{g.n} maps exceed the limit {limit}")
    L = _parameter(L, "L")
    C = _parameter(C, "C")
    if L < 1:
        raise GraphError("L must be at least 1")
    require_connected(g, "domain")
    require_connected(h, "codomain")
    _check_weights(g, domain_weights)
    _check_weights(h, codomain_weights)
    dg = distance_matrix(g, domain_weights)
    dh = distance_matrix(h, codomain_weights)

    def pair_ok(a, b) -> bool:
        return leq(b, L * a + C) and leq(a / L - C, b)

    n = g.n
    image = [0] * n

    def place(x: int) -> Optional[tuple]:
        if x == n:
            chosen = set(image)
            for y in range(h.n):
                if not any(leq(dh[y][z], C) for z in chosen):
                    return None
            return tuple(image)
        for cand in range(h.n):
            if all(pair_ok(dg[x][y], dh[cand][image[y]]) for y in range(x)):
                image[x] = cand
                found = place(x + 1)
                if found is not None:
                    return found
        return None

    if n == 0:
        return None
    found = place(0)
    return None if found is None else VertexMap(g, h, found)


def all_maps(g: Graph, h: Graph):
    """Every vertex map ``g -> h`` (test helper for tiny instances)."""
    for image in itertools.product(range(h.n), repeat=g.n):
        yield VertexMap(g, h, image)
