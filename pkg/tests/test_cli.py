import json
import subprocess
import sys

import mpmath
import pytest

from lambda_closures.gfun import asymptotic_estimate

from lambda_closures.cli import main
from lambda_closures.syntax import parse_object
from lambda_closures.terms import closure_openness, size_closure

EXAMPLE = "<0 1, [<\\\\0,[]>, <\\0,[]>]>"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


class TestCount:
    def test_closed_closures(self, capsys):
        code, [rec] = run(capsys, "count", "--class", "closed-closures", "--size", "10")
        assert code == 0
        assert rec["count"] == "7384"

    def test_environment_zero(self, capsys):
        _, [rec] = run(capsys, "count", "--class", "plain-environments", "--size", "0")
        assert rec == {"class": "plain-environments", "size": 0, "count": "1"}

    def test_huge_counts_are_strings(self, capsys):
        _, [rec] = run(capsys, "count", "--class", "plain-environments", "--size", "1000")
        assert isinstance(rec["count"], str)
        est = asymptotic_estimate("plain-environments", 1000)
        assert len(rec["count"]) == int(mpmath.floor(mpmath.log10(est))) + 1

    def test_upto(self, capsys):
        _, [rec] = run(capsys, "count", "--class", "m-open-terms", "--m", "0", "--upto", "6")
        assert rec["counts"] == ["0", "0", "1", "1", "3", "6", "17"]
        assert rec["m"] == 0

    def test_shallow(self, capsys):
        _, [rec] = run(capsys, "count", "--class", "shallow-terms", "--shallow-h", "1", "--size", "4")
        assert rec["count"] == "2" and rec["h"] == 1

    @pytest.mark.parametrize("argv", [
        ["count", "--class", "plain-terms"],
        ["count", "--class", "plain-terms", "--size", "3", "--upto", "4"],
        ["count", "--class", "shallow-terms", "--size", "3"],
        ["count", "--class", "plain-terms", "--size", "3", "--m", "1"],
        ["count", "--class", "shallow-terms", "--shallow-h", "1", "--m", "2", "--size", "3"],
        ["count", "--class", "nonsense", "--size", "3"],
        ["count", "--class", "plain-terms", "--size", "-3"],
        ["frobnicate"],
    ])
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as info:
            code = main(argv)
            raise SystemExit(code)
        assert info.value.code == 1


class TestSample:
    def test_recursive(self, capsys):
        code, recs = run(capsys, "sample", "--class", "closed-closures", "--size", "15", "--num", "5")
        assert code == 0
        *objs, summary = recs
        assert summary["summary"]["seed"] == 20180704
        for r in objs:
            c = parse_object(r["object"])
            assert size_closure(c) == r["size"] == 15
            assert closure_openness(c) == 0

    def test_seed_reproducible(self, capsys):
        _, a = run(capsys, "sample", "--class", "plain-terms", "--size", "20", "--num", "3", "--seed", "7")
        _, b = run(capsys, "sample", "--class", "plain-terms", "--size", "20", "--num", "3", "--seed", "7")
        assert a == b

    def test_boltzmann(self, capsys):
        code, recs = run(capsys, "sample", "--class", "plain-closures", "--method", "boltzmann",
                         "--size", "20", "--window", "18:22", "--num", "4")
        assert code == 0
        assert all(18 <= r["size"] <= 22 for r in recs[:-1])
        assert recs[-1]["summary"]["window"] == [18, 22]

    def test_boltzmann_class_restricted(self, capsys):
        assert main(["sample", "--class", "plain-terms", "--method", "boltzmann", "--size", "5"]) == 1

    def test_empty_class(self, capsys):
        assert main(["sample", "--class", "closed-closures", "--size", "1"]) == 1


class TestEval:
    def test_u_strong(self, capsys):
        code, [rec] = run(capsys, "eval", "--machine", "u", "--strong", "--input", EXAMPLE)
        assert code == 0
        assert rec["result"] == "\\0" and rec["status"] == "normal"

    @pytest.mark.parametrize("machine", ["subst", "upsilon"])
    def test_normalizers(self, capsys, machine):
        code, [rec] = run(capsys, "eval", "--machine", machine, "--strong",
                          "--input", "(\\\\\\2 0 (1 0)) (\\\\1)")
        assert rec["result"] == "\\\\0"

    def test_krivine(self, capsys):
        code, [rec] = run(capsys, "eval", "--machine", "krivine", "--input", EXAMPLE)
        assert rec["steps"] == 3
        assert rec["result"].startswith("[<\\0, ")

    def test_trace(self, capsys):
        code, recs = run(capsys, "eval", "--machine", "u", "--input", "(\\0)(\\\\0)", "--trace")
        assert [r.get("step") for r in recs[:-1]] == [0, 1, 2, 3]
        assert recs[-1]["result"] == "[<\\\\0, []>]"

    def test_fuel_exit(self, capsys):
        code, [rec] = run(capsys, "eval", "--machine", "subst", "--strong",
                          "--input", "(\\0 0)(\\0 0)", "--max-steps", "500")
        assert code == 2
        assert rec["status"] == "fuel-exhausted" and rec["steps"] == 500

    def test_parse_exit(self, capsys):
        assert main(["eval", "--input", "(\\0"]) == 3

    def test_krivine_strong_is_usage_error(self, capsys):
        assert main(["eval", "--machine", "krivine", "--strong", "--input", "\\0"]) == 1

    def test_stdin(self, capsys, monkeypatch):
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO("(\\0) (\\0)"))
        code, [rec] = run(capsys, "eval", "--machine", "subst", "--strong")
        assert rec["result"] == "\\0"


class TestAnalyzeVerify:
    def test_analyze(self, capsys):
        code, [rec] = run(capsys, "analyze", "--precision", "30")
        assert rec["digits"] == 30
        assert rec["constants"]["rho_plain"].startswith("0.165476")
        assert rec["constants"]["E_at_rho"] in ("2.0", "2")

    def test_analyze_shallow(self, capsys):
        _, [rec] = run(capsys, "analyze", "--shallow-h", "3")
        assert "inconclusive" in rec["shallow"]["growth"]

    def test_verify(self, capsys):
        code, [rec] = run(capsys, "verify", "--upto", "60", "--size", "5")
        assert code == 0 and rec["ok"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lambda_closures", "count", "--class", "closed-closures", "--size", "10"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == "7384"
    proc = subprocess.run([sys.executable, "-m", "lambda_closures", "count"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1
