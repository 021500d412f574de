"""Classify a monomial as inside, outside, or undecided for ``J*``.

``J = (x1^d, ..., x_{n-1}^d)``.  Three certificates are available:

* degree: ``deg u >= (n-1) d`` puts u in the tight closure of a homogeneous
  parameter ideal;
* Frobenius: ``u^q`` in ``J^[q]`` for a single q puts u in ``J^F``, hence in
  ``J*``;
* exclusion: ``c u^q`` not in ``J^[q]`` for a single q and a test element c
  keeps u out of ``J*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from dti.core import (
    DTIError,
    ExponentVector,
    InternalInconsistency,
    RingSpec,
    add,
    degree,
    format_monomial,
    parse_monomial,
    scale,
    unit_vector,
)
from dti.oracle import fast_member

MAX_Q_EXPONENT = 40

Membership = Callable[[RingSpec, Sequence[int], int], bool]


class InvalidTestElement(DTIError, ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    u: ExponentVector
    status: str  # "in" | "out" | "undecided"
    certificate: Optional[str] = None  # "frobenius" | "hara" for "in"
    q: Optional[int] = None  # certificate q, witness q, or the largest q tried

    def to_dict(self) -> dict:
        return {
            "u": list(self.u),
            "verdict": self.status,
            "certificate": self.certificate,
            "q": self.q,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(tuple(data["u"]), data["verdict"], data.get("certificate"), data.get("q"))

    def describe(self) -> str:
        mono = format_monomial(self.u)
        if self.status == "in" and self.certificate == "hara":
            return f"{mono}: in J* (degree bound)"
        if self.status == "in":
            return f"{mono}: in J* (u^q in J^[q] at q = {self.q})"
        if self.status == "out":
            return f"{mono}: not in J* (c*u^q not in J^[q] at q = {self.q})"
        return f"{mono}: undecided up to q = {self.q}"


def In(u, certificate, q=None) -> Verdict:
    return Verdict(tuple(u), "in", certificate, q)


def Out(u, q) -> Verdict:
    return Verdict(tuple(u), "out", None, q)


def Undecided(u, q) -> Verdict:
    return Verdict(tuple(u), "undecided", None, q)


@dataclass(frozen=True)
class ClosureConfig:
    q_max_exponent: int = 12
    test_element: Optional[ExponentVector] = None  # default x1^(d-1)
    use_degree_bound: bool = True
    check_exclusive: bool = False  # keep probing after a verdict to audit it

    def resolved_test_element(self, spec: RingSpec) -> ExponentVector:
        c = self.test_element or unit_vector(spec.n, 0, spec.d - 1)
        validate_test_element(spec, c)
        return tuple(c)


def validate_test_element(spec: RingSpec, c: Sequence[int]) -> None:
    """Known test elements: ``x_i^(d-1)`` (Jacobian) and ``x_i^d``."""
    support = [i for i, e in enumerate(c) if e]
    if len(c) != spec.n or len(support) != 1 or c[support[0]] not in (spec.d - 1, spec.d):
        raise InvalidTestElement(
            f"{format_monomial(c)} is not a supported test element; "
            f"use x_i^{spec.d - 1} or x_i^{spec.d}"
        )


def parse_test_element(text: str, spec: RingSpec) -> ExponentVector:
    text = text.replace("(d-1)", str(spec.d - 1)).replace("(d)", str(spec.d))
    c = parse_monomial(text, spec.n)
    validate_test_element(spec, c)
    return c


def classify_element(
    spec: RingSpec,
    u: Sequence[int],
    cfg: ClosureConfig = ClosureConfig(),
    member: Membership = fast_member,
) -> Verdict:
    """Decide ``u`` in ``J*`` with the cheapest certificate found first.

    Order: degree bound, then for q = p, p^2, ... the Frobenius check before
    the exclusion check at each q.  The first q that settles u is reported.
    """
    u = tuple(u)
    if len(u) != spec.n:
        raise ValueError("exponent vector has the wrong length")
    if not 0 <= cfg.q_max_exponent <= MAX_Q_EXPONENT:
        raise ValueError(f"q_max_exponent must be in [0, {MAX_Q_EXPONENT}]")
    c = cfg.resolved_test_element(spec)
    if any(e >= spec.d for e in u):
        return In(u, "frobenius", 1)

    verdict = None
    if cfg.use_degree_bound and degree(u) >= spec.hara_threshold:
        verdict = In(u, "hara")
        if not cfg.check_exclusive:
            return verdict

    found_in = verdict is not None
    found_out = False
    for e in range(1, cfg.q_max_exponent + 1):
        q = spec.p**e
        uq = scale(u, q)
        if member(spec, uq, q):
            found_in = True
            if verdict is None:
                verdict = In(u, "frobenius", q)
                if not cfg.check_exclusive:
                    return verdict
        if (verdict is None or cfg.check_exclusive) and not member(spec, add(c, uq), q):
            found_out = True
            if verdict is None:
                verdict = Out(u, q)
                if not cfg.check_exclusive:
                    return verdict
        if found_in and found_out:
            raise InternalInconsistency(
                f"{format_monomial(u)} has both an inclusion certificate and an "
                f"exclusion witness (q <= {q}) in {spec}"
            )
    if verdict is None:
        verdict = Undecided(u, spec.p**cfg.q_max_exponent)
    return verdict
