"""Ring parameters, exponent vectors and the base-d residue split.

A diagonal hypersurface ring is fixed by ``(p, d, n)``:
``R = F_p[x1..xn] / (x1^d + ... + xn^d)``.  Monomials are plain tuples of
non-negative Python ints, so exponents never overflow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from sympy import isprime

ExponentVector = Tuple[int, ...]

MAX_VARIABLES = 12


class DTIError(Exception):
    """Base class for all errors raised by this package."""


class InvalidRing(DTIError, ValueError):
    pass


class NotPrime(InvalidRing):
    pass


class DividesDegree(InvalidRing):
    pass


class TooFewVariables(InvalidRing):
    pass


class TooManyVariables(InvalidRing):
    pass


class DegreeTooSmall(InvalidRing):
    pass


class ParseError(DTIError, ValueError):
    pass


class ResourceLimit(DTIError, RuntimeError):
    """A configurable work budget was exhausted."""


class InternalInconsistency(DTIError, RuntimeError):
    """Two certificates contradict each other; indicates a bug."""


@dataclass(frozen=True)
class RingSpec:
    p: int
    d: int
    n: int

    @property
    def dim(self) -> int:
        return self.n - 1

    @property
    def hara_threshold(self) -> int:
        # sum of the degrees of the parameters x1^d, ..., x_{n-1}^d
        return (self.n - 1) * self.d

    def __str__(self) -> str:
        return f"(p={self.p}, d={self.d}, n={self.n})"


def validate_ring(p: int, d: int, n: int) -> RingSpec:
    """Return a :class:`RingSpec` or raise the matching :class:`InvalidRing`."""
    if not isprime(p):
        raise NotPrime(f"p = {p} is not prime")
    if d < 2:
        raise DegreeTooSmall(f"d = {d} must be at least 2")
    if d % p == 0:
        raise DividesDegree(f"p divides d (p = {p}, d = {d})")
    if n < 3:
        raise TooFewVariables(f"n = {n} must be at least 3")
    if n > MAX_VARIABLES:
        raise TooManyVariables(f"n = {n} exceeds the supported maximum {MAX_VARIABLES}")
    return RingSpec(p, d, n)


@dataclass(frozen=True)
class PrimePower:
    base: int
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be non-negative")

    @property
    def value(self) -> int:
        return self.base**self.exponent

    @classmethod
    def from_value(cls, p: int, q: int) -> "PrimePower":
        e = 0
        m = q
        while m > 1 and m % p == 0:
            m //= p
            e += 1
        if m != 1:
            raise ValueError(f"{q} is not a power of {p}")
        return cls(p, e)


@dataclass(frozen=True)
class ResidueSplit:
    r: ExponentVector
    a: ExponentVector


def split_residue(B: Sequence[int], d: int) -> ResidueSplit:
    """Write ``B = r + d*a`` with ``0 <= r_i < d``."""
    pairs = [divmod(b, d) for b in B]
    if any(b < 0 for b in B):
        raise ValueError("exponents must be non-negative")
    return ResidueSplit(tuple(r for _, r in pairs), tuple(a for a, _ in pairs))


def unit_vector(n: int, i: int, k: int = 1) -> ExponentVector:
    v = [0] * n
    v[i] = k
    return tuple(v)


def add(u: Sequence[int], v: Sequence[int]) -> ExponentVector:
    return tuple(a + b for a, b in zip(u, v))


def scale(u: Sequence[int], k: int) -> ExponentVector:
    return tuple(k * a for a in u)


def divides(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def degree(u: Sequence[int]) -> int:
    return sum(u)


# --- monomial text format -------------------------------------------------

_FACTOR = re.compile(r"^x(\d+)(?:\^\(?(\d+)\)?)?$")


def parse_monomial(text: str, n: int) -> ExponentVector:
    """Parse ``x3^2*x5`` (or ``1``) into an exponent vector of length ``n``."""
    text = text.strip().replace(" ", "")
    exps = [0] * n
    if text == "1":
        return tuple(exps)
    if not text:
        raise ParseError("empty monomial")
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise ParseError(f"cannot parse monomial factor {factor!r}")
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise ParseError(f"variable x{i} out of range for n = {n}")
        exps[i - 1] += int(m.group(2)) if m.group(2) is not None else 1
    return tuple(exps)


def format_monomial(u: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(u, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial_list(text: str, n: int) -> list[ExponentVector]:
    return [parse_monomial(t, n) for t in text.split(",") if t.strip()]


def check_length(vectors: Iterable[Sequence[int]], n: int) -> None:
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"exponent vector {tuple(v)} does not have length {n}")
