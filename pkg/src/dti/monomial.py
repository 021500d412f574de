"""Monomial ideals of ``S = F_p[x1..xn]``.

Every ideal of the hypersurface ring handled here contains ``x_i^d`` for all
``i`` once ``f`` is adjoined, so it is represented by its monomial preimage
in ``S``.  Generator lists are kept minimal and sorted lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Sequence

from dti import kernels
from dti.core import (
    DTIError,
    ExponentVector,
    RingSpec,
    check_length,
    divides,
    format_monomial,
    unit_vector,
)
from dti.lp import feasible_point

class NotArtinian(DTIError, ValueError):
    pass


@dataclass(frozen=True)
class MonomialIdeal:
    nvars: int
    gens: tuple[ExponentVector, ...]

    def __contains__(self, B) -> bool:
        return contains_monomial(self, B)

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(format_monomial(g) for g in self.text_order()) + ")"

    def text_order(self) -> list[ExponentVector]:
        """Generators in display order: x1^3 before x1^2*x2 before x5^3."""
        return sorted(self.gens, reverse=True)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.nvars,)

    def issubset(self, other: "MonomialIdeal") -> bool:
        return all(contains_monomial(other, g) for g in self.gens)

    def to_dict(self) -> dict:
        return {"nvars": self.nvars, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_dict(cls, data: dict) -> "MonomialIdeal":
        return minimalize([tuple(g) for g in data["gens"]], data["nvars"])


def minimalize(raw: Iterable[Sequence[int]], nvars: int) -> MonomialIdeal:
    """Minimal generating set of the ideal generated by ``raw``."""
    rows = [tuple(int(e) for e in r) for r in raw]
    check_length(rows, nvars)
    if any(e < 0 for r in rows for e in r):
        raise ValueError("exponents must be non-negative")
    return MonomialIdeal(nvars, tuple(kernels.minimal_rows(rows)))


def zero_ideal(nvars: int) -> MonomialIdeal:
    return MonomialIdeal(nvars, ())


def unit_ideal(nvars: int) -> MonomialIdeal:
    return MonomialIdeal(nvars, ((0,) * nvars,))


def contains_monomial(I: MonomialIdeal, B: Sequence[int]) -> bool:
    if len(B) != I.nvars:
        raise ValueError("dimension mismatch")
    return any(divides(g, B) for g in I.gens)


def contains_many(I: MonomialIdeal, points: Sequence[Sequence[int]]) -> list[bool]:
    return kernels.divisible_mask(points, I.gens)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    return minimalize(I.gens + J.gens, I.nvars)


def bracket_power(I: MonomialIdeal, q: int) -> MonomialIdeal:
    """Ideal generated by the q-th powers of the generators."""
    return MonomialIdeal(I.nvars, tuple(sorted(tuple(q * e for e in g) for g in I.gens)))


def power_of_maximal(n: int, k: int) -> MonomialIdeal:
    """``(x1, ..., xn)^k``: all monomials of degree k."""
    gens = []
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        prev, exps = -1, []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(k + n - 1 - prev - 1)
        gens.append(tuple(exps))
    return MonomialIdeal(n, tuple(sorted(gens)))


def maximal_ideal(n: int) -> MonomialIdeal:
    return power_of_maximal(n, 1)


def diagonal_ideal(spec: RingSpec) -> MonomialIdeal:
    """``(x1^d, ..., xn^d)``, the preimage of ``(x1^d, ..., x_{n-1}^d) R`` in S."""
    return MonomialIdeal(
        spec.n, tuple(sorted(unit_vector(spec.n, i, spec.d) for i in range(spec.n)))
    )


def colon_monomial(I: MonomialIdeal, B: Sequence[int]) -> MonomialIdeal:
    """``I : x^B``."""
    return minimalize(
        (tuple(max(g_i - b_i, 0) for g_i, b_i in zip(g, B)) for g in I.gens), I.nvars
    )


def intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    if I.is_zero or J.is_zero:
        return zero_ideal(I.nvars)
    if I.issubset(J):
        return I
    if J.issubset(I):
        return J
    return MonomialIdeal(I.nvars, tuple(kernels.lcm_minimal(I.gens, J.gens)))


def colon_ideal(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    """``A : B``, the intersection of ``A : b`` over generators b of B."""
    _same_ring(A, B)
    if B.is_zero:
        return unit_ideal(A.nvars)
    # minimalize after every pairwise step to keep the lcm products small
    return reduce(intersection, (colon_monomial(A, b) for b in B.gens))


def socle_generators(K: MonomialIdeal, spec: RingSpec) -> list[ExponentVector]:
    """Monomials u outside K with ``x_i u`` in K for every i, sorted.

    K must contain every pure power ``x_i^d``.
    """
    for i in range(spec.n):
        if unit_vector(spec.n, i, spec.d) not in K:
            raise NotArtinian(f"x{i + 1}^{spec.d} is not in the ideal")
    socle_ideal = colon_ideal(K, maximal_ideal(spec.n))
    out = [u for u, inside in zip(socle_ideal.gens, contains_many(K, socle_ideal.gens)) if not inside]
    assert all(e < spec.d for u in out for e in u)
    return out


def newton_member(w: Sequence[int], I: MonomialIdeal) -> bool:
    """Whether ``w`` lies in ``conv(gens) + R_{>=0}^n`` (exact LP)."""
    if I.is_zero:
        return False
    if contains_monomial(I, w):
        return True
    if sum(w) < min(sum(g) for g in I.gens):
        return False
    return _newton_certificate(w, I) is not None


def _newton_certificate(w, I):
    n, gens = I.nvars, I.gens
    m = len(gens)
    A = [[g[i] for g in gens] + [1 if k == i else 0 for k in range(n)] for i in range(n)]
    A.append([1] * m + [0] * n)
    return feasible_point(A, list(w) + [1])


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Integral closure via lattice points of the Newton polyhedron."""
    if I.is_zero:
        raise ValueError("integral closure of the zero ideal is not supported")
    n = I.nvars
    box = [max(g[i] for g in I.gens) for i in range(n)]
    points = sorted(
        itertools.product(*(range(M + 1) for M in box)), key=lambda w: (sum(w), w)
    )
    found: list[tuple[int, ...]] = []
    for w in points:
        if any(divides(f, w) for f in found):
            continue
        if newton_member(w, I):
            found.append(w)
    closure = minimalize(found, n)
    if not I.issubset(closure):
        raise AssertionError("integral closure does not contain the ideal")
    return closure


def is_integrally_closed(I: MonomialIdeal) -> bool:
    if I.is_zero:
        return True
    return integral_closure(I) == I


def closure_witness(I: MonomialIdeal, closure: MonomialIdeal) -> Optional[ExponentVector]:
    """A simplest generator of ``closure`` outside ``I``.

    Preference: lowest degree, fewest variables, variables as early as
    possible, then lexicographically smallest.
    """
    outside = [g for g in closure.gens if g not in I]
    if not outside:
        return None

    def key(g):
        support = [i for i, e in enumerate(g) if e]
        return (sum(g), len(support), support[-1] if support else -1, g)

    return min(outside, key=key)


def _same_ring(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.nvars != J.nvars:
        raise ValueError("ideals live in different polynomial rings")
