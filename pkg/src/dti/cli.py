"""Command line interface: ``dti {tau,member,closure,icl,reproduce,sweep,oracle-check}``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from dti.cache import ResultCache, cache_key
from dti.closure import MAX_Q_EXPONENT, ClosureConfig, classify_element, parse_test_element
from dti.core import (
    DTIError,
    PrimePower,
    format_monomial,
    parse_monomial,
    parse_monomial_list,
    validate_ring,
)
from dti.monomial import minimalize, power_of_maximal
from dti.oracle import MembershipQuery, equivalence_harness, escape_witness
from dti.reproduce import run_suite
from dti.testideal import (
    TestIdealReport,
    compute_test_ideal,
    expectation_checks,
    ideal_closure_check,
    membership_engine,
)

EXIT_OK, EXIT_ERROR, EXIT_BRACKETS = 0, 1, 2


def _ring_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True, help="characteristic (prime)")
    p.add_argument("--d", type=int, required=True, help="degree of the Fermat form")
    p.add_argument("--n", type=int, required=True, help="number of variables")


def _closure_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--qmax-exp", type=int, default=12, help="largest e tried for q = p^e")
    p.add_argument("--test-element", default="x1^(d-1)", help="x_i^(d-1) or x_i^d")
    p.add_argument("--engine", choices=["fast", "groebner", "both"], default="fast")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dti",
        description="Tight closure and test ideals of x1^d + ... + xn^d over F_p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", help="compute J* and the test ideal")
    _ring_args(p)
    _closure_args(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache-dir", default=None, help="defaults to $DTI_CACHE_DIR or ~/.cache/dti")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--checks", action="store_true", help="print expectation checks")

    p = sub.add_parser("member", help="is x^B in (x1^(dq), ..., x_(n-1)^(dq), f)?")
    _ring_args(p)
    p.add_argument("--monomial", required=True, help="e.g. x1^36*x2^128")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--engine", choices=["fast", "groebner", "both"], default="fast")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("closure", help="classify one monomial against J*")
    _ring_args(p)
    _closure_args(p)
    p.add_argument("--monomial", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("icl", help="integral closure of tau or of a given monomial ideal")
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--ideal", help='comma separated monomials, e.g. "x1^3,x1^2*x2"')
    p.add_argument("--nvars", type=int, help="number of variables for --ideal")
    p.add_argument("--qmax-exp", type=int, default=12)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("reproduce", help="run the embedded reproduction suite")
    p.add_argument("--only", help="row id or prefix, e.g. 4.1")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="compute tau over a range of n, with caching")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n-range", required=True, help="a..b")
    _closure_args(p)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle-check", help="compare fast and Groebner oracles over a box")
    _ring_args(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--box", type=int, required=True)
    p.add_argument("--cap", type=int, default=10**5)
    return parser


def _config(args, spec) -> ClosureConfig:
    if not 0 <= args.qmax_exp <= MAX_Q_EXPONENT:
        raise DTIError(f"--qmax-exp must be between 0 and {MAX_Q_EXPONENT}")
    return ClosureConfig(args.qmax_exp, parse_test_element(args.test_element, spec))


def _tau_text(report: TestIdealReport) -> str:
    lines = [f"ring: F_{report.spec.p}[x1..x{report.spec.n}]/(x1^{report.spec.d}+...+x{report.spec.n}^{report.spec.d})"]
    lines.append(f"exact: {'yes' if report.exact else 'no (brackets only)'}")
    lines.append(f"iterations: {report.iterations}, final socle elements outside J*: {report.socle_outside}")
    label = "J*" if report.exact else "J* lower"
    lines.append(f"{label}: " + ", ".join(format_monomial(g) for g in report.jstar_lower.text_order()))
    if not report.exact:
        lines.append("J* upper: " + ", ".join(format_monomial(g) for g in report.jstar_upper.text_order()))
    label = "tau" if report.exact else "tau lower"
    lines.append(f"{label}: " + ", ".join(format_monomial(g) for g in report.tau_lower.text_order()))
    if not report.exact:
        lines.append("tau upper: " + ", ".join(format_monomial(g) for g in report.tau_upper.text_order()))
    return "\n".join(lines)


def _compute_cached(spec, cfg, engine, cache: Optional[ResultCache]) -> TestIdealReport:
    key = cache_key(spec.p, spec.d, spec.n, cfg.q_max_exponent, cfg.resolved_test_element(spec), engine)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    report = compute_test_ideal(spec, cfg, engine)
    if cache is not None:
        cache.put(key, report)
    return report


def cmd_tau(args) -> int:
    spec = validate_ring(args.p, args.d, args.n)
    cfg = _config(args, spec)
    cache = None if args.no_cache else ResultCache(args.cache_dir)
    report = _compute_cached(spec, cfg, args.engine, cache)
    if args.json:
        out = report.to_dict()
        if args.checks and report.exact:
            out["expectations"] = [c.to_dict() for c in expectation_checks(report)]
        print(json.dumps(out, indent=2))
    else:
        print(_tau_text(report))
        if args.checks and report.exact:
            for c in expectation_checks(report):
                print(f"check {c.name}: {c.status} (predicted {c.predicted}) {c.note}")
    return EXIT_OK if report.exact else EXIT_BRACKETS


def cmd_member(args) -> int:
    spec = validate_ring(args.p, args.d, args.n)
    B = parse_monomial(args.monomial, spec.n)
    Q = PrimePower.from_value(spec.p, args.q)
    MembershipQuery(spec, B, Q)
    is_member = membership_engine(args.engine, gb_table_limit=None)(spec, B, Q.value)
    witness = None if is_member else escape_witness(spec, B, Q.value)
    if args.json:
        print(json.dumps({
            "monomial": list(B),
            "q": Q.value,
            "member": is_member,
            "witness": None if witness is None else {"eliminated": witness[0] + 1, "composition": list(witness[1])},
        }))
    else:
        print("member" if is_member else "non-member")
        if witness is not None:
            print(f"witness: eliminate x{witness[0] + 1}, carry-free composition {list(witness[1])}")
    return EXIT_OK


def cmd_closure(args) -> int:
    spec = validate_ring(args.p, args.d, args.n)
    cfg = _config(args, spec)
    u = parse_monomial(args.monomial, spec.n)
    v = classify_element(spec, u, cfg, membership_engine(args.engine))
    if args.json:
        print(json.dumps(v.to_dict()))
    else:
        print(v.describe())
    return EXIT_BRACKETS if v.status == "undecided" else EXIT_OK


def cmd_icl(args) -> int:
    if args.ideal:
        if not args.nvars:
            raise DTIError("--ideal needs --nvars")
        ideal = minimalize(parse_monomial_list(args.ideal, args.nvars), args.nvars)
    else:
        if None in (args.p, args.d, args.n):
            raise DTIError("give either --ideal or all of --p --d --n")
        spec = validate_ring(args.p, args.d, args.n)
        report = compute_test_ideal(spec, ClosureConfig(args.qmax_exp))
        if not report.exact:
            raise DTIError("test ideal is not exact; raise --qmax-exp")
        ideal = report.tau
    res = ideal_closure_check(ideal)
    if args.json:
        print(json.dumps({
            "ideal": ideal.to_dict(),
            "integrally_closed": res.is_closed,
            "closure": res.closure.to_dict(),
            "witness": None if res.witness is None else list(res.witness),
        }))
    else:
        print(f"ideal: {ideal}")
        print(f"closure: {_ideal_name(res.closure)}")
        print(f"integrally closed: {'yes' if res.is_closed else 'no'}")
        if res.witness is not None:
            print(f"witness: {format_monomial(res.witness)} is integral over the ideal but not in it")
    return EXIT_OK


def _ideal_name(ideal) -> str:
    if ideal.is_unit:
        return "(1)"
    degs = {sum(g) for g in ideal.gens}
    if len(degs) == 1:
        k = degs.pop()
        if ideal == power_of_maximal(ideal.nvars, k):
            return f"(x1,...,x{ideal.nvars})^{k}"
    return str(ideal)


def cmd_reproduce(args) -> int:
    rows = run_suite(args.only)
    if not rows:
        raise DTIError(f"no reproduction rows match {args.only!r}")
    if args.json:
        print(json.dumps({"rows": [r.to_dict() for r in rows], "passed": all(r.passed for r in rows)}, indent=2))
    else:
        width = max(len(r.id) for r in rows)
        for r in rows:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.id:<{width}}  {r.description}  [{r.detail}]")
            if r.note:
                print(f"      {'':<{width}}  note: {r.note}")
        print(f"{sum(r.passed for r in rows)}/{len(rows)} rows passed")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_ERROR


def _parse_range(text: str) -> range:
    try:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    except ValueError:
        raise DTIError(f"bad range {text!r}; expected a..b") from None


def _sweep_job(job):
    p, d, n, qmax, test_element, engine, cache_dir = job
    spec = validate_ring(p, d, n)
    cfg = ClosureConfig(qmax, parse_test_element(test_element, spec))
    return _compute_cached(spec, cfg, engine, ResultCache(cache_dir)).to_dict()


def sweep_table(reports: Sequence[TestIdealReport]) -> str:
    header = f"{'d':>3} | {'p':>3} | {'n':>3} | {'exact':<5} | {'iter':>4} | {'J* gens':>7} | {'tau gens':>8} | tau"
    lines = [header, "-" * len(header)]
    for r in reports:
        lines.append(
            f"{r.spec.d:>3} | {r.spec.p:>3} | {r.spec.n:>3} | {str(r.exact).lower():<5} | "
            f"{r.iterations:>4} | {len(r.jstar):>7} | {len(r.tau):>8} | {_tau_summary(r.tau)}"
        )
    return "\n".join(lines)


def _tau_summary(tau) -> str:
    name = _ideal_name(tau)
    return name if len(name) <= 60 else f"{len(tau)} monomials, degrees {sorted({sum(g) for g in tau.gens})}"


def cmd_sweep(args) -> int:
    ns = _parse_range(args.n_range)
    for n in ns:
        spec = validate_ring(args.p, args.d, n)
        _config(args, spec)
    cache_dir = str(ResultCache(args.cache_dir).directory)
    jobs = [(args.p, args.d, n, args.qmax_exp, args.test_element, args.engine, cache_dir) for n in ns]
    if args.jobs > 1:
        # each job owns a distinct cache file, so writers never collide
        with ProcessPoolExecutor(args.jobs) as pool:
            dicts = list(pool.map(_sweep_job, jobs))
    else:
        dicts = [_sweep_job(j) for j in jobs]
    reports = [TestIdealReport.from_dict(d) for d in dicts]
    if args.json:
        print(json.dumps({"reports": dicts}, indent=2))
    else:
        print(sweep_table(reports))
    return EXIT_OK if all(r.exact for r in reports) else EXIT_BRACKETS


def cmd_oracle_check(args) -> int:
    spec = validate_ring(args.p, args.d, args.n)
    rep = equivalence_harness(spec, args.box, PrimePower.from_value(spec.p, args.q), cap=args.cap)
    print(
        f"{rep.points} points, {len(rep.disagreements)} disagreements; "
        f"fast {rep.fast_seconds:.2f}s, groebner {rep.groebner_seconds:.2f}s (basis size {rep.gb_size})"
    )
    for B in rep.disagreements[:20]:
        print(f"  disagreement at {format_monomial(B)}")
    return EXIT_OK if rep.ok else EXIT_ERROR


COMMANDS = {
    "tau": cmd_tau,
    "member": cmd_member,
    "closure": cmd_closure,
    "icl": cmd_icl,
    "reproduce": cmd_reproduce,
    "sweep": cmd_sweep,
    "oracle-check": cmd_oracle_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DTIError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
