import json
import subprocess
import sys

import pytest

from dti.cache import ResultCache, cache_key
from dti.cli import main
from dti.testideal import ENGINE_VERSION, TestIdealReport

from conftest import report_for


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tau_text(capsys):
    code, out, _ = run(capsys, "tau", "--p", "2", "--d", "5", "--n", "5")
    assert code == 0
    tau_line = [l for l in out.splitlines() if l.startswith("tau:")][0]
    assert tau_line.startswith("tau: x1^3, x1^2*x2, x1^2*x3")
    assert tau_line.count(",") == 24


def test_tau_rejects_bad_ring(capsys):
    code, _, err = run(capsys, "tau", "--p", "3", "--d", "6", "--n", "4")
    assert code == 1
    assert "p divides d" in err


def test_tau_json(capsys):
    code, out, _ = run(capsys, "tau", "--p", "7", "--d", "4", "--n", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["tau"]["gens"][0] == [0, 0, 0, 0, 1]
    back = TestIdealReport.from_dict(data)
    assert back.exact and back.tau == report_for(7, 4, 5).tau
    assert back.verdicts == report_for(7, 4, 5).verdicts


def test_tau_brackets_exit_code(capsys):
    code, out, _ = run(capsys, "tau", "--p", "2", "--d", "5", "--n", "5", "--qmax-exp", "2", "--no-cache")
    assert code == 2
    assert "tau upper:" in out


def test_tau_qmax_cap(capsys):
    code, _, err = run(capsys, "tau", "--p", "2", "--d", "5", "--n", "3", "--qmax-exp", "41")
    assert code == 1 and "between 0 and 40" in err


def test_tau_checks(capsys):
    code, out, _ = run(capsys, "tau", "--p", "7", "--d", "4", "--n", "5", "--checks")
    assert code == 0 and "check hara: not-applicable" in out


def test_tau_uses_cache(capsys, tmp_path):
    cache_dir = tmp_path / "c"
    args = ("tau", "--p", "2", "--d", "5", "--n", "4", "--json", "--cache-dir", str(cache_dir))
    _, first, _ = run(capsys, *args)
    path = cache_dir / "tau_p2_d5_n4_e12.json"
    assert path.exists()
    _, second, _ = run(capsys, *args)
    assert first == second
    assert len(json.loads(path.read_text())["entries"]) == 1


@pytest.mark.parametrize(
    "mono,q,verdict",
    [("x1^12*x2^12*x3^12*x4^12*x5^12", "4", "member"), ("x1^36*x2^128*x3^128*x4^128*x5^128", "32", "non-member")],
)
def test_member(capsys, mono, q, verdict):
    code, out, _ = run(capsys, "member", "--p", "2", "--d", "5", "--n", "5", "--monomial", mono, "--q", q, "--engine", "both")
    assert code == 0 and out.splitlines()[0] == verdict


def test_member_json_witness(capsys):
    _, out, _ = run(capsys, "member", "--p", "7", "--d", "4", "--n", "5",
                    "--monomial", "x1^17*x2^21*x3^21*x4^21*x5^21", "--q", "7", "--json")
    data = json.loads(out)
    assert data["member"] is False and data["witness"]["composition"] == [1, 1, 1, 1]


def test_member_rejects_non_power(capsys):
    code, _, err = run(capsys, "member", "--p", "2", "--d", "5", "--n", "5", "--monomial", "x1", "--q", "6")
    assert code == 1 and err.startswith("error:")


def test_closure(capsys):
    code, out, _ = run(capsys, "closure", "--p", "2", "--d", "5", "--n", "5", "--monomial", "x1^2*x2^3*x3^4*x4^4*x5^4", "--json")
    assert code == 0 and json.loads(out) == {"u": [2, 3, 4, 4, 4], "verdict": "out", "certificate": None, "q": 16}


def test_closure_undecided_exit(capsys):
    code, _, _ = run(capsys, "closure", "--p", "2", "--d", "5", "--n", "5", "--monomial", "x1*x2^4*x3^4*x4^4*x5^4", "--qmax-exp", "3")
    assert code == 2


def test_icl_computed(capsys):
    code, out, _ = run(capsys, "icl", "--p", "3", "--d", "7", "--n", "4")
    assert code == 0
    assert "closure: (x1,...,x4)^4" in out and "witness: x1*x2^3" in out


def test_icl_explicit(capsys):
    code, out, _ = run(capsys, "icl", "--ideal", "x1^2,x2^2", "--nvars", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["integrally_closed"] is False and data["witness"] == [1, 1]


def test_icl_needs_arguments(capsys):
    code, _, _ = run(capsys, "icl", "--ideal", "x1^2")
    assert code == 1


def test_reproduce_only(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "4.3")
    assert code == 0 and "PASS  4.3" in out and "1/1 rows passed" in out


def test_reproduce_json(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "4.2", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and {r["id"] for r in data["rows"]} == {"4.2", "4.2w"}
    assert "q = 9" in [r for r in data["rows"] if r["id"] == "4.2w"][0]["note"]


def test_reproduce_unknown_row(capsys):
    code, _, _ = run(capsys, "reproduce", "--only", "9.9")
    assert code == 1


def test_sweep_is_cached_and_deterministic(capsys, tmp_path):
    args = ("sweep", "--p", "2", "--d", "5", "--n-range", "3..5", "--cache-dir", str(tmp_path))
    code, first, _ = run(capsys, *args)
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        f"tau_p2_d5_n{n}_e12.json" for n in (3, 4, 5)
    ]
    _, second, _ = run(capsys, *args)
    assert first == second
    assert len(first.splitlines()) == 5


def test_sweep_parallel_matches_serial(capsys, tmp_path):
    _, serial, _ = run(capsys, "sweep", "--p", "2", "--d", "5", "--n-range", "3..4", "--cache-dir", str(tmp_path / "a"))
    _, par, _ = run(capsys, "sweep", "--p", "2", "--d", "5", "--n-range", "3..4", "--jobs", "2", "--cache-dir", str(tmp_path / "b"))
    assert serial == par


def test_sweep_matches_374(capsys, tmp_path):
    _, out, _ = run(capsys, "sweep", "--p", "3", "--d", "7", "--n-range", "4..4", "--json", "--cache-dir", str(tmp_path))
    rep = TestIdealReport.from_dict(json.loads(out)["reports"][0])
    assert rep.tau == report_for(3, 7, 4).tau


def test_sweep_bad_range(capsys):
    code, _, err = run(capsys, "sweep", "--p", "2", "--d", "5", "--n-range", "3-5")
    assert code == 1 and "a..b" in err


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--p", "2", "--d", "3", "--n", "3", "--q", "2", "--box", "8")
    assert code == 0 and out.startswith("729 points, 0 disagreements")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dti", "member", "--p", "7", "--d", "4", "--n", "5",
                          "--monomial", "x1^21*x2^21*x3^21*x4^21*x5^21", "--q", "7"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "member"


def test_cache_round_trip_and_append(tmp_path):
    cache = ResultCache(tmp_path)
    r = report_for(2, 3, 3)
    key = cache_key(2, 3, 3, 12, r.test_element, "fast")
    assert cache.get(key) is None
    cache.put(key, r)
    assert cache.get(key) == r
    other = dict(key, engine="both")
    cache.put(other, TestIdealReport.from_dict(dict(r.to_dict(), engine="both")))
    entries = json.loads(cache.path(2, 3, 3, 12).read_text())["entries"]
    assert [e["key"]["engine"] for e in entries] == ["fast", "both"]
    assert all(e["engine_version"] == ENGINE_VERSION for e in entries)
    assert not list(tmp_path.glob(".tmp-*"))


def test_cache_rejects_mismatched_entry(tmp_path):
    cache = ResultCache(tmp_path)
    r = report_for(2, 3, 3)
    key = cache_key(2, 3, 3, 12, r.test_element, "fast")
    cache.put(key, report_for(5, 2, 3))
    with pytest.raises(ValueError):
        cache.get(key)


def test_default_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("DTI_CACHE_DIR", str(tmp_path))
    assert ResultCache().directory == tmp_path
