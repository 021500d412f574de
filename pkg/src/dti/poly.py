"""Sparse polynomials over F_p and a Buchberger Groebner basis engine.

This is the general-purpose (and slow) membership oracle used to referee the
combinatorial one in :mod:`dti.oracle`.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from dti.core import (
    DTIError,
    ExponentVector,
    ParseError,
    ResourceLimit,
    RingSpec,
    format_monomial,
    parse_monomial,
    unit_vector,
)

DEFAULT_PAIR_BUDGET = 10**6
DEFAULT_STEP_BUDGET = 10**7


class RingMismatch(DTIError, ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex or lex with ``x1 > x2 > ... > xn``."""

    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Sequence[int]) -> tuple[int, ...]:
        """Sort key; a larger key means a larger monomial."""
        if self.kind == "lex":
            return tuple(e)
        return (sum(e),) + tuple(-x for x in reversed(e))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to residues."""

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, terms: Mapping[ExponentVector, int], nvars: int, p: int):
        self.p = p
        self.nvars = nvars
        clean = {}
        for e, c in terms.items():
            c %= p
            if c:
                if len(e) != nvars:
                    raise RingMismatch(f"exponent {e} has wrong length")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, e: Sequence[int], p: int, coeff: int = 1) -> "Polynomial":
        return cls({tuple(e): coeff}, len(e), p)

    @classmethod
    def constant(cls, c: int, nvars: int, p: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars, p)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "Polynomial") -> None:
        if self.p != other.p or self.nvars != other.nvars:
            raise RingMismatch("polynomials over different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Polynomial(t, self.nvars, self.p)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial({e: c * v for e, v in self.terms.items()}, self.nvars, self.p)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        t: dict[ExponentVector, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = (t.get(e, 0) + c1 * c2) % self.p
        return Polynomial(t, self.nvars, self.p)

    def __pow__(self, k: int) -> "Polynomial":
        result = Polynomial.constant(1, self.nvars, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, e: Sequence[int], c: int = 1) -> "Polynomial":
        return Polynomial(
            {tuple(a + b for a, b in zip(m, e)): c * v for m, v in self.terms.items()},
            self.nvars,
            self.p,
        )

    def leading_monomial(self, order: MonomialOrder) -> ExponentVector:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        return self.scale(pow(self.leading_coefficient(order), -1, self.p))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.p, self.nvars, self.terms) == (other.p, other.nvars, other.terms)

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.terms.items())))

    def to_text(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[e]
            mono = format_monomial(e)
            if mono == "1":
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{c}*{mono}")
        return "+".join(out)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r}, p={self.p})"


_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_polynomial(text: str, nvars: int, p: int) -> Polynomial:
    """Parse ``x1^7+x2^7`` or ``2*x1^3*x2`` style text."""
    text = text.replace(" ", "")
    if not text:
        raise ParseError("empty polynomial")
    terms: dict[ExponentVector, int] = {}
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos:
            raise ParseError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        factors = m.group(2).split("*")
        coeff = 1
        if factors[0].isdigit():
            coeff = int(factors.pop(0))
        e = parse_monomial("*".join(factors), nvars) if factors else (0,) * nvars
        terms[e] = terms.get(e, 0) + sign * coeff
    if pos != len(text):
        raise ParseError(f"cannot parse polynomial {text!r}")
    return Polynomial(terms, nvars, p)


def defining_polynomial(spec: RingSpec) -> Polynomial:
    """``x1^d + ... + xn^d`` over F_p."""
    return Polynomial(
        {unit_vector(spec.n, i, spec.d): 1 for i in range(spec.n)}, spec.n, spec.p
    )


# --- reduction ---------------------------------------------------------------


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(
    g: Polynomial,
    basis: Sequence[Polynomial],
    order: MonomialOrder = GREVLEX,
    step_budget: Optional[int] = None,
) -> Polynomial:
    """Fully reduce ``g`` by ``basis`` (multivariate division remainder).

    More than ``step_budget`` single-term reductions raises ResourceLimit.
    """
    return _reduce(g, basis, order, step_budget)[0]


def _reduce(g, basis, order, step_budget):
    p = g.p
    red = []
    for b in basis:
        if b.is_zero():
            raise ValueError("basis polynomials must be nonzero")
        b._check(g)
        lm = b.leading_monomial(order)
        inv = pow(b.terms[lm], -1, p)
        tail = [(e, c * inv % p) for e, c in b.terms.items() if e != lm]
        red.append((lm, tail))

    def neg_key(e):
        return tuple(-k for k in order.key(e))

    work = dict(g.terms)
    heap = [(neg_key(e), e) for e in work]
    heapq.heapify(heap)
    rem: dict[ExponentVector, int] = {}
    steps = 0
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, None)
        if c is None:
            continue
        for lm, tail in red:
            if _divides(lm, e):
                steps += 1
                if step_budget is not None and steps > step_budget:
                    raise ResourceLimit(
                        f"reduction exceeded the budget of {step_budget} steps"
                    )
                shift = tuple(x - y for x, y in zip(e, lm))
                for te, tc in tail:
                    m = tuple(x + y for x, y in zip(te, shift))
                    if m in work:
                        v = (work[m] - c * tc) % p
                        if v:
                            work[m] = v
                        else:
                            del work[m]
                    else:
                        work[m] = (-c * tc) % p
                        heapq.heappush(heap, (neg_key(m), m))
                break
        else:
            rem[e] = c
    return Polynomial(rem, g.nvars, p), steps


# --- Buchberger --------------------------------------------------------------


@dataclass
class GroebnerBasis:
    basis: list[Polynomial]
    order: MonomialOrder = GREVLEX
    stats: dict = field(default_factory=dict)

    def leading_monomials(self) -> list[ExponentVector]:
        return [b.leading_monomial(self.order) for b in self.basis]

    def reduce(self, g: Polynomial) -> Polynomial:
        return normal_form(g, self.basis, self.order)

    def contains(self, g: Polynomial) -> bool:
        return self.reduce(g).is_zero()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = tuple(map(max, lf, lg))
    a = f.mul_monomial(
        tuple(x - y for x, y in zip(lcm, lf)), pow(f.terms[lf], -1, f.p)
    )
    b = g.mul_monomial(
        tuple(x - y for x, y in zip(lcm, lg)), pow(g.terms[lg], -1, g.p)
    )
    return a - b


def buchberger(
    gens: Iterable[Polynomial],
    order: MonomialOrder = GREVLEX,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm degree first,
    ties broken by pair index).  Pairs whose leading monomials are coprime are
    skipped (Buchberger's first criterion).  More than ``pair_budget`` pair
    reductions, or more than ``step_budget`` single-term reduction steps in
    total, raises :class:`ResourceLimit`.
    """
    G = [g.monic(order) for g in gens if not g.is_zero()]
    if not G:
        return GroebnerBasis([], order)
    lms = [g.leading_monomial(order) for g in G]
    pairs: list[tuple[int, int, int]] = []

    def push(i: int, j: int) -> None:
        lcm = tuple(map(max, lms[i], lms[j]))
        heapq.heappush(pairs, (sum(lcm), i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)

    reductions = skipped = steps = 0
    while pairs:
        _, i, j = heapq.heappop(pairs)
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            skipped += 1
            continue
        reductions += 1
        if reductions > pair_budget:
            raise ResourceLimit(
                f"Groebner basis exceeded the budget of {pair_budget} pair reductions"
            )
        h, used = _reduce(s_polynomial(G[i], G[j], order), G, order, step_budget - steps)
        steps += used
        if not h.is_zero():
            G.append(h.monic(order))
            lms.append(G[-1].leading_monomial(order))
            k = len(G) - 1
            for i2 in range(k):
                push(i2, k)

    # minimal basis: drop elements whose leading monomial is divisible by another
    keep = []
    for k, lm in enumerate(lms):
        if any(
            _divides(lms[o], lm) and (lms[o] != lm or o < k)
            for o in range(len(G))
            if o != k
        ):
            continue
        keep.append(G[k])
    # interreduce tails
    reduced = []
    for k, g in enumerate(keep):
        lm = g.leading_monomial(order)
        others = keep[:k] + keep[k + 1 :]
        tail = Polynomial({e: c for e, c in g.terms.items() if e != lm}, g.nvars, g.p)
        tail, used = _reduce(tail, others, order, step_budget - steps)
        steps += used
        reduced.append(Polynomial.monomial(lm, g.p) + tail)
    reduced.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    return GroebnerBasis(
        reduced, order, {"pair_reductions": reductions, "pairs_skipped": skipped, "steps": steps}
    )


def gb_ideal_member(
    g: Polynomial,
    gens: Sequence[Polynomial],
    order: MonomialOrder = GREVLEX,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> bool:
    return buchberger(gens, order, pair_budget).contains(g)


class MonomialReducer:
    """Memoized normal forms of monomials against a fixed Groebner basis.

    Normal forms modulo a reduced Groebner basis are unique, so reducing a
    monomial one step and recursing on the (smaller) tail monomials gives the
    same remainder as :func:`normal_form`; the memo is shared across queries.
    """

    def __init__(self, gb: GroebnerBasis, max_entries: Optional[int] = None):
        self.gb = gb
        self.p = gb.basis[0].p if gb.basis else None
        order = gb.order
        self._red = []
        for b in gb.basis:
            lm = b.leading_monomial(order)
            self._red.append((lm, [(e, c) for e, c in b.terms.items() if e != lm]))
        self._memo: dict[ExponentVector, dict[ExponentVector, int]] = {}
        self.max_entries = max_entries

    def _find(self, e):
        for lm, tail in self._red:
            if _divides(lm, e):
                return lm, tail
        return None

    def reduce_monomial(self, e: Sequence[int]) -> dict[ExponentVector, int]:
        e = tuple(e)
        memo = self._memo
        if e in memo:
            return memo[e]
        p = self.p
        stack = [e]
        while stack:
            top = stack[-1]
            if top in memo:
                stack.pop()
                continue
            hit = self._find(top)
            if hit is None:
                memo[top] = {top: 1}
                stack.pop()
                continue
            lm, tail = hit
            shift = tuple(x - y for x, y in zip(top, lm))
            children = [(tuple(a + b for a, b in zip(te, shift)), tc) for te, tc in tail]
            missing = [c for c, _ in children if c not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc: dict[ExponentVector, int] = {}
            for c, tc in children:
                for m, v in memo[c].items():
                    acc[m] = (acc.get(m, 0) - tc * v) % p
            memo[top] = {m: v for m, v in acc.items() if v}
            stack.pop()
            if self.max_entries is not None and len(memo) > self.max_entries:
                raise ResourceLimit(
                    f"monomial normal-form table exceeded {self.max_entries} entries"
                )
        return memo[e]

    def is_member(self, e: Sequence[int]) -> bool:
        return not self.reduce_monomial(e)
