import json
import math
import subprocess
import sys

import pytest

from cubeprod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_main_b1(capsys):
    code, out, _ = run(capsys, "verify", "--id", "main_b1", "--tol", "1e-8", "--format", "machine")
    assert code == 0
    (rep,) = json.loads(out)
    assert rep["pass"] and abs(rep["lhs"]["re"] - 1 / 3) < 1e-8


def test_verify_table(capsys):
    code, out, _ = run(capsys, "verify", "--id", "main_b1")
    assert code == 0
    assert "PASS" in out and "1/1 passed" in out


def test_verify_with_parameters(capsys):
    code, out, _ = run(capsys, "verify", "--id", "transform_b", "--b", "0.6", "--format", "machine")
    assert code == 0
    (rep,) = json.loads(out)
    assert rep["params"] == {"b": 0.6}
    code, out, _ = run(capsys, "verify", "--id", "parametric", "--a", "0.05-0.1j", "--format", "machine")
    assert code == 0
    assert json.loads(out)[0]["params"]["a"] == {"re": 0.05, "im": -0.1}
    code, out, _ = run(capsys, "verify", "--id", "ramanujan_r2", "--alpha", "2.5")
    assert code == 0


def test_eval_product(capsys):
    code, out, _ = run(capsys, "eval-product", "--b", "1", "--x", "0")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "eval-product", "--b", "1", "--x", "1")
    assert abs(float(out) - math.pi / math.cosh(math.pi * math.sqrt(3) / 2)) < 1e-14
    code, out, _ = run(capsys, "eval-product", "--b", "1", "--x", "1", "--method", "truncated", "--terms", "1000")
    assert code == 0 and "tail bound" in out


def test_eval_product_pole(capsys):
    code, _, err = run(capsys, "eval-product", "--b", "1", "--x", "-1")
    assert code == 1 and "PoleError" in err


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--count", "5", "--format", "machine")
    assert code == 0
    rows = json.loads(out)
    assert [r["index"] for r in rows] == list(range(5))
    for n, r in enumerate(rows):
        assert r["residual"] < 1e-11
        assert abs(r["root"]["im"] - math.pi * (n + 0.5)) < 0.2
    code, out, _ = run(capsys, "roots", "--count", "3")
    assert code == 0 and len(out.splitlines()) == 4


def test_failing_tolerance_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--id", "main_b1", "--tol", "1e-16", "--format", "machine")
    assert code == 1
    (rep,) = json.loads(out)
    assert not rep["pass"]
    assert "NoConvergence" in rep["details"]["error"]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["verify"],
        ["verify", "--id", "nope"],
        ["verify", "--id", "main_b1", "--tol", "abc"],
        ["verify", "--id", "main_b1", "--tol", "-1"],
        ["verify", "--id", "main_b1", "--b", "1"],
        ["verify", "--id", "transform_b", "--b", "nan"],
        ["verify", "--id", "parametric", "--a", "0.5"],
        ["verify", "--id", "ramanujan_r2", "--alpha", "0.5"],
        ["eval-product", "--b", "0", "--x", "1"],
        ["eval-product", "--b", "1", "--x", "1+1"],
        ["roots", "--count", "0"],
        ["verify-all", "--filter", "nope"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_machine_output_idempotent(capsys):
    _, first, _ = run(capsys, "report", "--filter", "closed_form")
    _, second, _ = run(capsys, "report", "--filter", "closed_form")
    assert first == second
    assert all(obj["wall_time_ms"] is None for obj in json.loads(first))


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "report", "--filter", "main_b1", "--timing")
    assert json.loads(out)[0]["wall_time_ms"] >= 0


def test_output_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify-all", "--filter", "logtrig", "--format", "machine", "--output", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert [r["id"] for r in doc] == ["logtrig", "logtrig", "beta_link"]


def test_verify_all_workers(capsys):
    _, serial, _ = run(capsys, "verify-all", "--filter", "substitution", "--format", "machine")
    code, parallel, _ = run(capsys, "verify-all", "--filter", "substitution", "--format", "machine", "--workers", "3")
    assert code == 0 and serial == parallel


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cubeprod", "eval-product", "--b", "1", "--x", "0"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
