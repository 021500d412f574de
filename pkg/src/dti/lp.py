"""Exact feasibility LP over the rationals (two-phase simplex, Bland's rule)."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def feasible_point(
    A: Sequence[Sequence[int]], b: Sequence[int]
) -> Optional[list[Fraction]]:
    """Return some ``x >= 0`` with ``A x = b`` or None if there is none.

    Phase one of the simplex method on ``A x + s = b`` with one artificial
    variable per row, minimizing the sum of artificials.  Bland's rule picks
    entering and leaving columns, so the method cannot cycle.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    # flip rows so the right-hand side is non-negative
    T: list[list[Fraction]] = []
    for i in range(rows):
        sign = -1 if b[i] < 0 else 1
        T.append(
            [Fraction(sign * A[i][j]) for j in range(cols)]
            + [Fraction(1 if k == i else 0) for k in range(rows)]
            + [Fraction(sign * b[i])]
        )
    width = cols + rows
    basis = [cols + i for i in range(rows)]
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for i in range(rows):
        for j in range(width + 1):
            cost[j] -= T[i][j]
    for i in range(rows):
        cost[cols + i] += 1

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(rows):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best[0] or (
                    ratio == best[0] and basis[i] < basis[best[1]]
                ):
                    best = (ratio, i)
        if best is None:
            # unbounded direction; cannot happen for a phase-one objective bounded below
            raise ArithmeticError("phase-one LP reported unbounded")
        _pivot(T, cost, basis, best[1], entering)

    if -cost[width] != 0:
        return None
    x = [Fraction(0)] * cols
    for i, j in enumerate(basis):
        if j < cols:
            x[j] = T[i][width]
    return x


def _pivot(T, cost, basis, r, c):
    piv = T[r][c]
    row = [v / piv for v in T[r]]
    T[r] = row
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], row)]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [a - f * b for a, b in zip(cost, row)]
    basis[r] = c
