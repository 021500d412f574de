"""Compute ``J*`` for ``J = (x1^d, ..., x_{n-1}^d)`` and the test ideal ``J : J*``.

The candidate ``K`` starts at ``(x1^d, ..., xn^d)`` (the preimage of ``J`` once
``f`` is adjoined).  Each round classifies the socle monomials of ``S/K``
against ``J*`` and adds those that are in.  Distinct socle monomials have
distinct ``Z_d^n`` degrees and ``J*`` is homogeneous, so testing them one by
one is enough.  When some element stays undecided the result is reported as
a pair of certified brackets instead.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Optional, Sequence

from dti.closure import ClosureConfig, Verdict, classify_element
from dti.core import (
    ExponentVector,
    InternalInconsistency,
    RingSpec,
    format_monomial,
    unit_vector,
)
from dti.monomial import (
    MonomialIdeal,
    closure_witness,
    colon_ideal,
    diagonal_ideal,
    ideal_sum,
    integral_closure,
    intersection,
    minimalize,
    power_of_maximal,
    socle_generators,
    unit_ideal,
)
from dti.oracle import fast_member, groebner_member

ENGINE_VERSION = "1"


class OracleDisagreement(InternalInconsistency):
    pass


def membership_engine(name: str, gb_table_limit: Optional[int] = 2 * 10**6) -> Callable:
    """``fast``, ``groebner``, or ``both`` (cross-check every call)."""
    if name == "fast":
        return fast_member
    if name == "groebner":
        return lambda spec, B, q: groebner_member(spec, B, q, table_limit=gb_table_limit)
    if name == "both":

        def both(spec, B, q):
            a = fast_member(spec, B, q)
            b = groebner_member(spec, B, q, table_limit=gb_table_limit)
            if a != b:
                raise OracleDisagreement(
                    f"oracles disagree on {format_monomial(B)} at q = {q} in {spec}"
                )
            return a

        return both
    raise ValueError(f"unknown engine {name!r}")


@dataclass
class JStarResult:
    lower: MonomialIdeal
    upper: MonomialIdeal
    verdicts: list[tuple[int, Verdict]]
    iterations: int
    final_socle: list[ExponentVector]

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def compute_jstar(
    spec: RingSpec, cfg: ClosureConfig = ClosureConfig(), engine: str = "fast"
) -> JStarResult:
    member = membership_engine(engine)
    K = diagonal_ideal(spec)
    seen: dict[ExponentVector, tuple[int, Verdict]] = {}
    iterations = 0
    while True:
        iterations += 1
        if iterations > spec.d**spec.n:
            raise InternalInconsistency("iteration cap exceeded")
        socle = socle_generators(K, spec)
        # J stays fixed; K only tracks the growing candidate
        for u in socle:
            if u not in seen:
                seen[u] = (iterations, classify_element(spec, u, cfg, member))
        new = [u for u in socle if seen[u][1].status == "in"]
        if not new:
            break
        K = ideal_sum(K, minimalize(new, spec.n))

    outside = [u for u, (_, v) in seen.items() if v.status == "out"]
    undecided = [u for u in socle if seen[u][1].status == "undecided"]
    upper = _upper_bound(spec, outside)
    if not K.issubset(upper):
        raise InternalInconsistency("certified lower bound escapes the upper bound")
    if not undecided and upper != K:
        raise InternalInconsistency("no undecided elements but the brackets differ")
    verdicts = sorted(seen.values(), key=lambda iv: (iv[0], iv[1].u))
    return JStarResult(K, upper, verdicts, iterations, socle)


def _upper_bound(spec: RingSpec, outside: Sequence[ExponentVector]) -> MonomialIdeal:
    """Monomials dividing no element known to lie outside ``J*``.

    ``J*`` is a monomial ideal, so a monomial dividing an excluded one is
    excluded too.  ``J*`` is proper, so 1 is always excluded.
    """
    n = spec.n
    avoid = [tuple(o) for o in outside] + [(0,) * n]
    ideals = (
        MonomialIdeal(n, tuple(sorted(unit_vector(n, i, o[i] + 1) for i in range(n))))
        for o in avoid
    )
    return reduce(intersection, ideals)


@dataclass
class TestIdealReport:
    spec: RingSpec
    qmax_exp: int
    test_element: ExponentVector
    engine: str
    jstar_lower: MonomialIdeal
    jstar_upper: MonomialIdeal
    tau_lower: MonomialIdeal
    tau_upper: MonomialIdeal
    verdicts: list[tuple[int, Verdict]]
    iterations: int
    socle_outside: int
    elapsed_ms: float = 0.0

    # not a test class, despite the name
    __test__ = False

    @property
    def exact(self) -> bool:
        return self.jstar_lower == self.jstar_upper

    @property
    def tau(self) -> MonomialIdeal:
        return self.tau_lower

    @property
    def jstar(self) -> MonomialIdeal:
        return self.jstar_lower

    def to_dict(self) -> dict:
        out = {
            "p": self.spec.p,
            "d": self.spec.d,
            "n": self.spec.n,
            "qmax_exp": self.qmax_exp,
            "test_element": list(self.test_element),
            "engine": self.engine,
            "exact": self.exact,
            "jstar": self.jstar_lower.to_dict(),
            "tau": self.tau_lower.to_dict(),
        }
        if not self.exact:
            out["jstar_upper"] = self.jstar_upper.to_dict()
            out["tau_upper"] = self.tau_upper.to_dict()
        out["socle_outside"] = self.socle_outside
        out["verdicts"] = [dict(v.to_dict(), iteration=it) for it, v in self.verdicts]
        out["iterations"] = self.iterations
        out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> "TestIdealReport":
        jl = MonomialIdeal.from_dict(data["jstar"])
        tl = MonomialIdeal.from_dict(data["tau"])
        ju = MonomialIdeal.from_dict(data["jstar_upper"]) if "jstar_upper" in data else jl
        tu = MonomialIdeal.from_dict(data["tau_upper"]) if "tau_upper" in data else tl
        verdicts = [(v["iteration"], Verdict.from_dict(v)) for v in data["verdicts"]]
        return cls(
            RingSpec(data["p"], data["d"], data["n"]),
            data["qmax_exp"],
            tuple(data["test_element"]),
            data["engine"],
            jl,
            ju,
            tl,
            tu,
            verdicts,
            data["iterations"],
            data["socle_outside"],
            data["elapsed_ms"],
        )

    @classmethod
    def from_json(cls, text: str) -> "TestIdealReport":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TestIdealReport):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def compute_test_ideal(
    spec: RingSpec, cfg: ClosureConfig = ClosureConfig(), engine: str = "fast"
) -> TestIdealReport:
    t0 = time.perf_counter()
    js = compute_jstar(spec, cfg, engine)
    D = diagonal_ideal(spec)
    tau_lower = colon_ideal(D, js.upper)
    tau_upper = colon_ideal(D, js.lower)
    report = TestIdealReport(
        spec=spec,
        qmax_exp=cfg.q_max_exponent,
        test_element=cfg.resolved_test_element(spec),
        engine=engine,
        jstar_lower=js.lower,
        jstar_upper=js.upper,
        tau_lower=tau_lower,
        tau_upper=tau_upper,
        verdicts=js.verdicts,
        iterations=js.iterations,
        socle_outside=sum(1 for u in js.final_socle if u not in js.lower),
        elapsed_ms=round((time.perf_counter() - t0) * 1000, 3),
    )
    _check_report(report)
    return report


def _check_report(report: TestIdealReport) -> None:
    spec = report.spec
    D = diagonal_ideal(spec)
    if not report.tau_lower.issubset(report.tau_upper):
        raise InternalInconsistency("test ideal brackets are not nested")
    if not D.issubset(report.tau_lower):
        raise InternalInconsistency("test ideal does not contain the parameter ideal")
    if report.exact and any(v.status == "undecided" for _, v in report.verdicts if v.u in report.jstar_lower):
        raise InternalInconsistency("exact report with an undecided generator")
    if spec.p < spec.d and not report.tau_upper.issubset(power_of_maximal(spec.n, spec.p - 1)):
        raise InternalInconsistency(
            f"test ideal is not contained in m^{spec.p - 1} although p < d"
        )


# --- expectations from known closed forms ---------------------------------------


@dataclass
class ExpectationCheck:
    name: str
    predicted: str
    actual: str
    status: str  # "match" | "mismatch" | "not-applicable"
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "predicted": self.predicted,
            "actual": self.actual,
            "status": self.status,
            "note": self.note,
        }


def _describe_power(n: int, k: int) -> str:
    return "(1)" if k <= 0 else f"m^{k}"


def expectation_checks(report: TestIdealReport) -> list[ExpectationCheck]:
    """Compare an exact test ideal with the large-p and small-p closed forms."""
    spec = report.spec
    p, d, n = spec.p, spec.d, spec.n
    tau = report.tau
    actual = str(tau) if len(tau) <= 12 else f"{len(tau)} generators"
    checks = []

    k = d - n + 1
    generic = unit_ideal(n) if k <= 0 else power_of_maximal(n, k)
    for name, bound in (
        ("fedder-watanabe", n * (d - 1) - d),
        ("huneke", n * (d - 1) - 2 * d + 1),
        ("hara", n * (d - 1) - 2 * d),
    ):
        predicted = _describe_power(n, k)
        if p > bound:
            status = "match" if tau == generic else "mismatch"
            note = f"p = {p} > {bound}"
        else:
            status = "not-applicable"
            note = f"below bound: needs p > {bound}"
            if k <= 0 and not tau.is_unit:
                note += "; ring is not F-regular here"
        checks.append(ExpectationCheck(name, predicted, actual, status, note))

    if p < d:
        contained = report.tau_upper.issubset(power_of_maximal(n, p - 1))
        checks.append(
            ExpectationCheck(
                "p<d containment",
                f"tau in m^{p - 1}",
                actual,
                "match" if contained else "mismatch",
            )
        )
    else:
        checks.append(
            ExpectationCheck("p<d containment", "tau in m^(p-1)", actual, "not-applicable", "p > d")
        )

    if p == d - 1:
        checks.append(
            ExpectationCheck(
                "p=d-1 equality",
                _describe_power(n, p - 1),
                actual,
                "match" if tau == power_of_maximal(n, p - 1) else "mismatch",
            )
        )
    else:
        checks.append(
            ExpectationCheck("p=d-1 equality", "m^(p-1)", actual, "not-applicable", "p != d-1")
        )
    return checks


@dataclass
class IntegralClosureResult:
    is_closed: bool
    closure: MonomialIdeal
    witness: Optional[ExponentVector]


def integral_closure_check(report: TestIdealReport) -> IntegralClosureResult:
    if not report.exact:
        raise ValueError("integral closure check needs an exact test ideal")
    return ideal_closure_check(report.tau)


def ideal_closure_check(ideal: MonomialIdeal) -> IntegralClosureResult:
    closure = integral_closure(ideal)
    witness = closure_witness(ideal, closure)
    return IntegralClosureResult(witness is None, closure, witness)
