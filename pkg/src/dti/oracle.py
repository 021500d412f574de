"""Membership of a monomial in ``(x1^{dQ}, ..., x_{n-1}^{dQ}, f)``.

Write ``B = r + d*a`` with ``0 <= r_i < d`` and put ``t_i = x_i^d``.  The
ideal is homogeneous for the ``Z_d^n`` grading by residues of exponents, and
its piece in class ``r`` is ``x^r * (t_1^Q, ..., t_n^Q, s)`` with
``s = t_1 + ... + t_n`` (``f^Q`` supplies ``x_n^{dQ}``).  Eliminating ``t_j``
through ``s`` sends ``t_j^Q`` into ``(t_i^Q : i != j)``, so ``x^B`` is a member
iff every term of ``t^{a'} * s^{a_j}`` (``a'`` = ``a`` without coordinate j)
lies in ``(t_i^Q)``.  A term ``t^{a'+k}`` survives mod p iff the multinomial
``(a_j; k)`` is nonzero mod p, i.e. ``k`` is a carry-free composition, and it
escapes the ideal iff ``k_i <= Q - 1 - a_i`` for all i.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Optional, Sequence

from dti.core import ExponentVector, PrimePower, RingSpec, split_residue, unit_vector
from dti.modp import exists_bounded_carryfree_composition
from dti.poly import (
    DEFAULT_PAIR_BUDGET,
    DEFAULT_STEP_BUDGET,
    GREVLEX,
    GroebnerBasis,
    MonomialReducer,
    Polynomial,
    buchberger,
    defining_polynomial,
)


@dataclass(frozen=True)
class MembershipQuery:
    spec: RingSpec
    B: ExponentVector
    Q: PrimePower

    def __post_init__(self):
        if len(self.B) != self.spec.n or any(b < 0 for b in self.B):
            raise ValueError(f"bad exponent vector {self.B} for n = {self.spec.n}")
        if self.Q.base != self.spec.p:
            raise ValueError("Q must be a power of the characteristic")


def escape_witness(
    spec: RingSpec, B: Sequence[int], q: int, eliminate: Optional[int] = None
) -> Optional[tuple[int, ExponentVector]]:
    """Carry-free composition proving ``x^B`` is NOT in the bracket ideal.

    Returns ``(j, k)`` with j the eliminated coordinate, or None for members.
    """
    split = split_residue(B, spec.d)
    a = split.a
    # j with the smallest quotient keeps the composition total small
    j = min(range(spec.n), key=lambda i: (a[i], i)) if eliminate is None else eliminate
    bounds = [q - 1 - a[i] for i in range(spec.n) if i != j]
    k = exists_bounded_carryfree_composition(a[j], bounds, spec.p)
    return None if k is None else (j, k)


def monomial_in_frobenius_bracket(
    query: MembershipQuery, eliminate: Optional[int] = None
) -> bool:
    """Whether ``x^B`` lies in ``(x1^{dQ}, ..., x_{n-1}^{dQ}, f) S``."""
    return escape_witness(query.spec, query.B, query.Q.value, eliminate) is None


def fast_member(spec: RingSpec, B: Sequence[int], q: int) -> bool:
    return escape_witness(spec, B, q) is None


def expansion_member(spec: RingSpec, B: Sequence[int], q: int) -> bool:
    """Brute-force reference: expand ``x_n^{d a_n}`` via ``x_n^d = -(x_1^d + ...)``.

    Uses exact integer multinomials and checks every surviving term against
    the monomial ideal ``(x_1^{dQ}, ..., x_{n-1}^{dQ})``.  Exponential in
    ``a_n``; meant for cross-checks only.
    """
    n, d, p = spec.n, spec.d, spec.p
    T = B[-1] // d
    head = B[:-1]
    bound = d * q
    if any(b >= bound for b in head):
        return True
    for k in _compositions(T, n - 1):
        coeff = factorial(T) // prod(factorial(x) for x in k)
        if coeff % p == 0:
            continue
        if all(h + d * x < bound for h, x in zip(head, k)):
            return False
    return True


def _compositions(total: int, parts: int):
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


# --- Groebner side -----------------------------------------------------------


def bracket_generators(spec: RingSpec, q: int) -> list[Polynomial]:
    """``x1^{dq}, ..., x_{n-1}^{dq}, f`` as polynomials."""
    gens = [
        Polynomial.monomial(unit_vector(spec.n, i, spec.d * q), spec.p)
        for i in range(spec.n - 1)
    ]
    gens.append(defining_polynomial(spec))
    return gens


@lru_cache(maxsize=32)
def bracket_basis(
    spec: RingSpec,
    q: int,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> GroebnerBasis:
    return buchberger(bracket_generators(spec, q), GREVLEX, pair_budget, step_budget)


@lru_cache(maxsize=32)
def bracket_reducer(
    spec: RingSpec,
    q: int,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> MonomialReducer:
    return MonomialReducer(bracket_basis(spec, q, pair_budget, step_budget))


def groebner_member(
    spec: RingSpec,
    B: Sequence[int],
    q: int,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    table_limit: Optional[int] = None,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> bool:
    """Membership by reduction modulo a Groebner basis of the bracket ideal.

    ``pair_budget`` and ``step_budget`` bound the basis computation and
    ``table_limit`` caps the memoized normal-form table; exceeding any of them
    raises :class:`~dti.core.ResourceLimit`.
    """
    reducer = bracket_reducer(spec, q, pair_budget, step_budget)
    reducer.max_entries = table_limit
    return reducer.is_member(B)


# --- equivalence harness -----------------------------------------------------


@dataclass
class HarnessReport:
    spec: RingSpec
    q: int
    box_limit: int
    points: int
    disagreements: list[ExponentVector] = field(default_factory=list)
    fast_seconds: float = 0.0
    groebner_seconds: float = 0.0
    gb_size: int = 0

    @property
    def ok(self) -> bool:
        return not self.disagreements


def box_points(n: int, box_limit: int, cap: Optional[int] = None):
    """Points of ``[0, box_limit]^n`` in lexicographic order.

    Above ``cap`` points, every k-th point of that order is kept so that at
    most ``cap`` remain (deterministic subsampling).
    """
    total = (box_limit + 1) ** n
    step = 1 if cap is None or total <= cap else -(-total // cap)
    for idx, pt in enumerate(itertools.product(range(box_limit + 1), repeat=n)):
        if idx % step == 0:
            yield pt


def equivalence_harness(
    spec: RingSpec,
    box_limit: int,
    Q: PrimePower,
    cap: Optional[int] = 10**5,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> HarnessReport:
    """Compare the fast oracle with Groebner reduction over a box of exponents."""
    q = Q.value
    pts = list(box_points(spec.n, box_limit, cap))
    t0 = time.perf_counter()
    fast = [fast_member(spec, B, q) for B in pts]
    t1 = time.perf_counter()
    reducer = MonomialReducer(buchberger(bracket_generators(spec, q), GREVLEX, pair_budget))
    slow = [reducer.is_member(B) for B in pts]
    t2 = time.perf_counter()
    bad = sorted(B for B, x, y in zip(pts, fast, slow) if x != y)
    return HarnessReport(
        spec, q, box_limit, len(pts), bad, t1 - t0, t2 - t1, len(reducer.gb.basis)
    )
