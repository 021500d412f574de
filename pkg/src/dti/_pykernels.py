"""Pure-Python kernels; the reference backend and the fallback for ``_ckernels``.

Both backends expose the same three functions with identical semantics.  This
one also handles exponents beyond 64 bits.
"""

from __future__ import annotations

from typing import Optional, Sequence

BACKEND = "python"


def carryfree_digits(
    total: Sequence[int], bounds: Sequence[Sequence[int]], p: int
) -> Optional[list[list[int]]]:
    """Digit DP for a carry-free composition of ``total`` under ``bounds``.

    ``total`` and every ``bounds[i]`` are base-``p`` digit lists, least
    significant first, all of the same length.  Digits are fixed from the most
    significant position down; the DP state is the bitmask of coordinates whose
    prefix still equals the bound's prefix ("tight").  Among feasible
    choices the lexicographically largest digit split is taken at each
    position, which makes the witness deterministic.

    Returns the witness digits per coordinate (least significant first) or
    None.
    """
    L = len(total)
    m = len(bounds)
    full = (1 << m) - 1
    memo: dict[tuple[int, int], bool] = {}
    choice: list[Optional[list[int]]] = [None] * L
    next_mask = [0] * L

    def assign(pos: int, mask: int) -> bool:
        caps = [bounds[i][pos] if (mask >> i) & 1 else p - 1 for i in range(m)]
        suffix = [0] * (m + 1)
        for i in range(m - 1, -1, -1):
            suffix[i] = suffix[i + 1] + caps[i]
        digits = [0] * m

        def rec(i: int, remaining: int, nm: int) -> bool:
            if i == m:
                if remaining:
                    return False
                choice[pos] = list(digits)
                next_mask[pos] = nm
                return feasible(pos - 1, nm)
            hi = min(caps[i], remaining)
            lo = max(0, remaining - suffix[i + 1])
            for v in range(hi, lo - 1, -1):
                digits[i] = v
                tight = (mask >> i) & 1 and v == caps[i]
                if rec(i + 1, remaining - v, nm | (1 << i) if tight else nm):
                    return True
            return False

        return rec(0, total[pos], 0)

    def feasible(pos: int, mask: int) -> bool:
        if pos < 0:
            return True
        key = (pos, mask)
        if key not in memo:
            memo[key] = assign(pos, mask)
        return memo[key]

    if not feasible(L - 1, full):
        return None
    # forward walk: nested searches may have overwritten lower positions
    mask = full
    for pos in range(L - 1, -1, -1):
        assign(pos, mask)
        mask = next_mask[pos]
    return [[choice[pos][i] for pos in range(L)] for i in range(m)]


def minimal_rows(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Minimal elements of a set of exponent vectors, sorted lexicographically."""
    uniq = sorted(set(map(tuple, rows)), key=lambda r: (sum(r), r))
    kept: list[tuple[int, ...]] = []
    for r in uniq:
        if not any(all(a <= b for a, b in zip(k, r)) for k in kept):
            kept.append(r)
    kept.sort()
    return kept


def lcm_minimal(X, Y) -> list[tuple[int, ...]]:
    """Minimal elements of ``{lcm(x, y)}``: generators of an intersection."""
    return minimal_rows({tuple(map(max, x, y)) for x in X for y in Y})


def divisible_mask(
    points: Sequence[Sequence[int]], gens: Sequence[Sequence[int]]
) -> list[bool]:
    """For each point, whether some generator divides it."""
    return [
        any(all(a <= b for a, b in zip(g, pt)) for g in gens) for pt in points
    ]
