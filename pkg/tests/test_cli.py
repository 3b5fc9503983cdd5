"""Command-line front end: exit codes, determinism, artifacts."""

import json
import subprocess
import sys

import pytest

from qlorentz.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- normalize --------------------------------------------------------------


def test_normalize_da(capsys):
    code, out, _ = run_cli(capsys, "normalize", "d*a")
    assert code == 0
    assert out.strip() == "a*d + (-q + q^-1)*b*c"


def test_normalize_reduce(capsys):
    code, out, _ = run_cli(capsys, "normalize", "a*d - q*b*c", "--reduce")
    assert code == 0
    assert out.strip() == "1"


def test_normalize_spec_selection(capsys):
    code, out, _ = run_cli(capsys, "normalize", "dbar*abar",
                           "--spec", "sl2q_bar")
    assert code == 0
    assert "abar*dbar" in out


def test_normalize_numeric(capsys):
    code, out, _ = run_cli(capsys, "normalize", "q^2*a", "--q", "2.0")
    assert code == 0
    assert out.strip() == "4*a"


def test_normalize_unknown_generator(capsys):
    code, _, err = run_cli(capsys, "normalize", "zz")
    assert code == 2
    assert "zz" in err


def test_normalize_syntax_error(capsys):
    code, _, err = run_cli(capsys, "normalize", "a +")
    assert code == 2
    assert "line 1" in err


def test_normalize_unknown_spec(capsys):
    code, _, err = run_cli(capsys, "normalize", "a", "--spec", "nope")
    assert code == 2
    assert "unknown spec" in err


# -- verify -----------------------------------------------------------------


def test_verify_passing_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "epsilon")
    assert code == 0
    assert "suite epsilon: ok" in out


def test_verify_failing_suite(capsys):
    # the sigma suite carries the printed-form comparisons, which fail on
    # the canonical build; the exit code reports that honestly
    code, out, _ = run_cli(capsys, "verify", "sigma")
    assert code == 1
    assert "printed-form" in out


def test_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "verify", "nope")
    assert code == 2
    assert "unknown suite" in err


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "sldet", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["suite"] == "sldet"
    assert data["exit_status"] == 0
    assert all(c["passed"] for c in data["checks"])


def test_verify_report_dir(tmp_path, capsys):
    code, _, err = run_cli(capsys, "verify", "spinor",
                           "--report-dir", str(tmp_path / "out"))
    assert code == 0
    csv_path = tmp_path / "out" / "spinor_report.csv"
    png_path = tmp_path / "out" / "spinor_report.png"
    assert csv_path.exists() and png_path.exists()
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "suite,check_id,tag,passed,residual"
    assert len(lines) > 1
    assert png_path.stat().st_size > 0


# -- emit -------------------------------------------------------------------


def test_emit_eta_text(capsys):
    code, out, _ = run_cli(capsys, "emit", "eta")
    assert code == 0
    assert "1/2*q + 1/2*q^-1" in out


def test_emit_dmatrix_half_is_generator_matrix(capsys):
    code, out, _ = run_cli(capsys, "emit", "dmatrix", "--j", "1/2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1].split() == ["a", "b"]
    assert lines[2].split() == ["c", "d"]


def test_emit_dmatrix_json(capsys):
    code, out, _ = run_cli(capsys, "emit", "dmatrix", "--j", "1",
                           "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["j"] == "1"
    assert len(data["entries"]) == 3


def test_emit_sigma_classical_point(capsys):
    code, out, _ = run_cli(capsys, "emit", "sigma", "--q", "1",
                           "--format", "json")
    assert code == 0
    data = json.loads(out)
    # classical Pauli set at q = 1
    assert data["matrices"][0] == [["1", "0"], ["0", "1"]]
    assert data["matrices"][2] == [["0", "-1*i"], ["1*i", "0"]]


def test_emit_invalid_j(capsys):
    code, *_ = run_cli(capsys, "emit", "dmatrix", "--j", "1/3")
    assert code == 2
    code, _, err = run_cli(capsys, "emit", "dmatrix", "--j", "7/2")
    assert code == 2
    assert "bound" in err


def test_emit_invalid_kind(capsys):
    code, *_ = run_cli(capsys, "emit", "nope")
    assert code == 2


# -- determinism ------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["normalize", "d*a*c*b - q^(1/2)*b*c"],
    ["emit", "eta", "--format", "json"],
    ["emit", "dmatrix", "--j", "3/2", "--format", "json"],
    ["verify", "epsilon", "--format", "json"],
])
def test_byte_identical_reruns(argv):
    def run():
        return subprocess.run(
            [sys.executable, "-m", "qlorentz.cli", *argv],
            capture_output=True, check=False)
    r1, r2 = run(), run()
    assert r1.returncode == r2.returncode
    assert r1.stdout == r2.stdout
