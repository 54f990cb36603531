import json
import subprocess
import sys

import pytest

from qrlab.cli import main
from qrlab.report import dumps


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_symbol(capsys):
    code, out, _ = run(capsys, "symbol", 2, 5, "--method", "all")
    assert code == 0
    assert out.splitlines() == ["euler: -1", "brute: -1", "reciprocity: -1"]
    assert run(capsys, "symbol", 0, 7)[:2] == (0, "0\n")
    assert run(capsys, "symbol", -1, 13, "--method", "reciprocity")[:2] == (0, "1\n")
    code, _, err = run(capsys, "symbol", 4, 6)
    assert code == 2 and "NotPrime" in err
    assert run(capsys, "symbol", 4, 2)[0] == 2


def test_symbol_disagreement_exits_1(capsys, monkeypatch):
    from qrlab import cli

    real = cli.legendre
    monkeypatch.setattr(cli, "legendre", lambda a, p, m: -real(a, p, m) if m == "brute" else real(a, p, m))
    assert run(capsys, "symbol", 2, 5, "--method", "all")[0] == 1


def test_charsum(capsys):
    assert run(capsys, "charsum", 3, 2)[:2] == (0, "[-2, 1, 1]\n")
    assert run(capsys, "charsum", 3, 2, "--method", "brute")[:2] == (0, "[-2, 1, 1]\n")
    assert run(capsys, "charsum", 3, 3, 1, "--method", "closed")[:2] == (0, "-3\n")
    assert run(capsys, "charsum", 3, 5, 1, "--method", "conv", "--mod", 5)[:2] == (0, "4\n")
    assert run(capsys, "charsum", 3, 5, 1, "--method", "brute", "--mod", 5)[:2] == (0, "4\n")
    assert run(capsys, "charsum", 5, 3, "--method", "closed")[:2] == (0, "[0, 5, -5, -5, 5]\n")


def test_charsum_errors(capsys):
    assert run(capsys, "charsum", 9, 2)[0] == 2
    assert run(capsys, "charsum", 5, 2, 1, "--method", "closed")[0] == 2  # even order
    assert run(capsys, "charsum", 5, 0)[0] == 2
    assert run(capsys, "charsum", 5, 3, "--mod", 1)[0] == 2
    assert run(capsys, "charsum", 11, 9, 1, "--method", "brute")[0] == 3
    assert run(capsys, "charsum", 3, 70)[0] == 3
    assert run(capsys, "charsum", 3, 9, "--max-order", 5)[0] == 3


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", 3, 5, 1, "--json")
    assert code == 0
    d = json.loads(out)
    assert d["n_fixed"] == 1 and d["fixed_tuple_entry"] == 2
    assert d["n_fixed"] + 5 * d["n_free"] == 81
    assert d["total_mod_q"] == d["fixed_mod_q"]
    assert run(capsys, "orbit", 5, 5, 1)[0] == 2
    assert run(capsys, "orbit", 101, 5, 1)[0] == 3


def test_verify(capsys):
    assert run(capsys, "verify", 3, 5)[0] == 0
    assert run(capsys, "verify", 5, 5)[0] == 2
    assert run(capsys, "verify", 4, 5)[0] == 2
    code, out, _ = run(capsys, "verify", 3, 7, "--json")
    assert code == 0
    d = json.loads(out)
    assert list(d) == ["tool", "version", "params", "steps", "summary"]
    families = [s["step_id"] for s in d["steps"]]
    assert set(families) == {"EulerCongruence", "OrbitCongruence", "ReciprocityLaw"}
    assert families.count("ReciprocityLaw") == 1
    assert all(s["passed"] is True for s in d["steps"])
    assert all("modulus" in s for s in d["steps"] if s["step_id"] != "ReciprocityLaw")
    assert d["summary"] == {"passed": 7, "failed": 0, "skipped": 0}


def test_suite(capsys):
    code, out, err = run(capsys, "suite", "--pmax", 3, "--qmax", 3)
    assert code == 0 and "no prime pairs" in err
    code, out, err = run(capsys, "suite", "--pmax", 13, "--qmax", 11, "--nmax", 5, "--json")
    assert code == 0
    assert err  # progress goes to stderr
    d = json.loads(out)
    assert d["summary"]["failed"] == 0
    assert d["summary"]["passed"] == len(d["steps"])
    assert d["params"]["pmax"] == 13


def test_suite_json_round_trip_and_determinism(capsys):
    _, a, _ = run(capsys, "suite", "--pmax", 19, "--qmax", 13, "--nmax", 7, "--json", "--quiet")
    _, b, _ = run(capsys, "suite", "--pmax", 19, "--qmax", 13, "--nmax", 7, "--json", "--quiet", "--threads", 3)
    assert a == b
    assert dumps(json.loads(a)) == a


def test_big_values_are_strings(capsys):
    from qrlab.proofcheck import ProofReport, ProofStep, StepId
    from qrlab.report import report_to_json

    big = 199**6 * 199**6
    r = ProofReport([ProofStep(StepId.ClosedForm, {"p": 199, "n": 25}, big, big, True)])
    d = json.loads(report_to_json(r))
    assert d["steps"][0]["lhs"] == str(big)
    assert isinstance(d["steps"][0]["params"]["p"], int)


def test_suite_fault_exits_1(capsys):
    code, out, _ = run(capsys, "suite", "--pmax", 7, "--qmax", 7, "--nmax", 5, "--json", "--quiet",
                       "--inject-fault", "5,2,1")
    assert code == 1
    d = json.loads(out)
    assert d["summary"]["failed"] > 0
    assert all(s["params"]["p"] == 5 for s in d["steps"] if not s["passed"])


def test_suite_strict_skips(capsys):
    argv = ["suite", "--pmax", 5, "--qmax", 3, "--nmax", 7, "--max-order", 5, "--quiet", "--json"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    d = json.loads(out)
    skipped = [s for s in d["steps"] if "skipped" in s]
    assert skipped and d["summary"]["skipped"] == len(skipped)
    assert all(s["passed"] is False for s in skipped)
    assert run(capsys, *argv, "--strict")[0] == 3


def test_suite_usage_errors(capsys):
    assert run(capsys, "suite", "--pmax", 2)[0] == 2
    assert run(capsys, "suite", "--nmax", 4)[0] == 2
    assert run(capsys, "suite", "--threads", 0)[0] == 2


def test_suite_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("QRLAB_THREADS", "2")
    assert run(capsys, "suite", "--pmax", 7, "--qmax", 5, "--quiet")[0] == 0
    monkeypatch.setenv("QRLAB_THREADS", "x")
    assert run(capsys, "suite", "--pmax", 7, "--qmax", 5, "--quiet")[0] == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--op", "symbol", "--sizes", 101, 1009, "--repetitions", 1)
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert rows[0] == ["op", "method", "p", "n", "calls", "median_s"]
    assert {r[1] for r in rows[1:]} == {"euler", "brute", "reciprocity"}
    assert len(rows) == 1 + 3 * 2
    code, out, _ = run(capsys, "bench", "--op", "charsum", "--p", 11, "--n", 3, "--repetitions", 1)
    assert code == 0
    assert {line.split("\t")[1] for line in out.strip().splitlines()[1:]} == {"conv", "conv-mod3", "brute"}
    assert run(capsys, "bench", "--repetitions", 0)[0] == 2
    assert run(capsys, "bench", "--op", "symbol", "--sizes", 100)[0] == 2


def test_bench_default_pmax(capsys):
    code, out, _ = run(capsys, "bench", "--op", "symbol", "--pmax", 10007, "--repetitions", 1)
    assert code == 0
    assert {line.split("\t")[2] for line in out.strip().splitlines()[1:]} == {"97", "997", "10007"}


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["symbol", "x", "5"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qrlab", "symbol", "2", "7"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "1\n"
