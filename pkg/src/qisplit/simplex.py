"""Dense two-phase simplex over exact rationals.

Solves ``min c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0`` with
:class:`fractions.Fraction` arithmetic and Bland's rule, so it terminates and
its answers are exact.  Meant for the small programs of the weight solver
(a few hundred rows and columns at most).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

MAX_VARIABLES = 200


class LPSizeError(ValueError):
    pass


@dataclass(frozen=True)
class LPResult:
    status: Literal["optimal", "infeasible", "unbounded"]
    x: Optional[tuple[Fraction, ...]]
    objective: Optional[Fraction]
    pivots: int


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    row = T[r]
    p = row[c]
    if p != 1:
        row = [v / p for v in row]
        T[r] = row
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i == r:
            continue
        f = other[c]
        if f:
            for j in nz:
                other[j] -= f * row[j]


def _run(T, basis, allowed, pivots_left):
    """Bland's-rule iterations on tableau ``T`` whose last row holds reduced costs."""
    obj = T[-1]
    rhs = len(obj) - 1
    pivots = 0
    while True:
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return "optimal", pivots
        best = None
        for i in range(len(T) - 1):
            a = T[i][enter]
            if a > 0:
                key = (T[i][rhs] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded", pivots
        r = best[1]
        _pivot(T, r, enter)
        basis[r] = enter
        pivots += 1
        if pivots > pivots_left:
            raise RuntimeError("simplex pivot limit reached")


def linprog_exact(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    max_pivots: int = 100_000,
) -> LPResult:
    n = len(c)
    if n > MAX_VARIABLES:
        raise LPSizeError(f"{n} variables exceed the limit of {MAX_VARIABLES}")
    rows = [([Fraction(v) for v in a], Fraction(b), "ub") for a, b in zip(A_ub, b_ub)]
    rows += [([Fraction(v) for v in a], Fraction(b), "eq") for a, b in zip(A_eq, b_eq)]
    for a, _, _ in rows:
        if len(a) != n:
            raise ValueError("constraint row length does not match the objective")
    m = len(rows)
    n_slack = sum(1 for _, _, kind in rows if kind == "ub")
    # an artificial is needed wherever the slack cannot start basic
    needs_art = [kind == "eq" or b < 0 for _, b, kind in rows]
    n_art = sum(needs_art)
    width = n + n_slack + n_art
    zero = Fraction(0)
    T: list[list[Fraction]] = []
    basis: list[int] = []
    s_col, a_col = n, n + n_slack
    for (a, b, kind), art in zip(rows, needs_art):
        row = a + [zero] * (width - n) + [b]
        if kind == "ub":
            row[s_col] = Fraction(1)
            slack = s_col
            s_col += 1
        if b < 0:
            row = [-v for v in row]
        if art:
            row[a_col] = Fraction(1)
            basis.append(a_col)
            a_col += 1
        else:
            basis.append(slack)
        T.append(row)

    total = 0
    if n_art:
        phase1 = [zero] * (width + 1)
        for j in range(n + n_slack, width):
            phase1[j] = Fraction(1)
        for i, b in enumerate(basis):
            if b >= n + n_slack:
                phase1 = [p - v for p, v in zip(phase1, T[i])]
        T.append(phase1)
        status, pivots = _run(T, basis, range(width), max_pivots)
        total += pivots
        if -T[-1][-1] > 0:
            return LPResult("infeasible", None, None, total)
        T.pop()
        # drive remaining (zero-valued) artificials out of the basis
        for i in range(m - 1, -1, -1):
            if basis[i] >= n + n_slack:
                j = next((j for j in range(n + n_slack) if T[i][j] != 0), None)
                if j is None:
                    del T[i]
                    del basis[i]
                else:
                    _pivot(T, i, j)
                    basis[i] = j
        for row in T:
            del row[n + n_slack : width]
        width = n + n_slack

    cost = [Fraction(v) for v in c] + [zero] * (width - n) + [zero]
    for i, b in enumerate(basis):
        if cost[b]:
            f = cost[b]
            cost = [p - f * v for p, v in zip(cost, T[i])]
    T.append(cost)
    status, pivots = _run(T, basis, range(width), max_pivots - total)
    total += pivots
    if status == "unbounded":
        return LPResult("unbounded", None, None, total)
    x = [zero] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = T[i][-1]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), zero)
    return LPResult("optimal", tuple(x), value, total)
