import json
import subprocess
import sys

import pytest

from wildhodge.cli import main
from wildhodge.polys import LaurentPoly2, from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["hpoly", "--n", "2", "--g", "0", "--mu", "11,11,11"], "1"),
        (["hpoly", "--n", "2", "--g", "0", "--m", "1", "--r", "1"], "0"),
        (["hpoly", "--n", "1", "--g", "0", "--mu", "1", "--m", "1", "--r", "2"], "1"),
        (["mhp", "--n", "2", "--g", "0", "--mu", "11,11", "--m", "1", "--r", "1"], "1 + 3*q*t^2 + q^2*t^2"),
        (["epoly", "--n", "2", "--g", "0", "--mu", "11,11", "--m", "1", "--r", "1"], "1 + 3*q + q^2"),
        (["mhp", "--n", "2", "--g", "0", "--mu", "11,11,11,11"], "1 + 4*q*t^2 + q^2*t^2"),
        (["dim", "--n", "2", "--m", "1", "--r", "3"], "2"),
    ],
)
def test_compute_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == expected


def test_mhp_is_labelled(capsys):
    _, out, _ = run(capsys, "mhp", "--n", "2", "--mu", "11,11,11,11")
    assert "CONJECTURAL" in out
    _, out, _ = run(capsys, "mhp", "--n", "2", "--mu", "11,11,11,11", "--format", "json")
    assert json.loads(out)["result"]["conjectural"] is True


def test_count_headline(capsys):
    code, out, _ = run(capsys, "count", "--n", "2", "--g", "0", "--m", "1", "--r", "3", "--q", "5")
    assert code == 0
    assert "brute-force count: 31" in out and "fused count: 31" in out and out.rstrip().endswith("PASS")


def test_count_empty(capsys):
    code, out, _ = run(capsys, "count", "--n", "2", "--m", "1", "--r", "1", "--q", "5")
    assert code == 0 and "fused count: 0" in out


def test_count_not_found_suggests_prime(capsys):
    code, out, _ = run(capsys, "count", "--n", "2", "--m", "1", "--r", "2", "--q", "3")
    assert code == 0
    assert out.startswith("NotFound") and "q=5" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "symmetry", "--n", "2"],
        ["verify", "palindromic", "--n", "2"],
        ["verify", "duality", "--n", "2"],
        ["verify", "hecke", "--n", "2", "--q", "3"],
        ["verify", "tame", "--n", "2"],
        ["verify", "macdonald", "--n", "4"],
    ],
)
def test_verify_suites(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "FAIL" not in out and "PASS" in out


def test_hecke_spectrum(capsys):
    code, out, _ = run(capsys, "hecke-spectrum", "--n", "2", "--q", "3")
    assert code == 0
    assert out.splitlines()[0] == "eigenvalues: [1, 1, 3, 3, 3, 3, 9, 9]"


def test_macdonald_command(capsys):
    code, out, _ = run(capsys, "macdonald", "21")
    assert code == 0
    assert out.splitlines() == ["s[3]: 1", "s[2, 1]: q + t", "s[1, 1, 1]: q*t"]


def test_json_schema_and_round_trip(capsys):
    code, out, _ = run(capsys, "mhp", "--n", "2", "--mu", "11,11", "--m", "1", "--r", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"command", "params", "result", "checks", "runtime_ms"}
    assert doc["params"] == {"n": 2, "g": 0, "k": 2, "m": 1, "mu": [[1, 1], [1, 1]], "r_vec": [1]}
    q, t = LaurentPoly2.var(0), LaurentPoly2.var(1)
    assert from_json(doc["result"]) == 1 + 3 * q * t ** 2 + q ** 2 * t ** 2

    code, out, _ = run(capsys, "hpoly", "--n", "2", "--mu", "11,11", "--m", "1", "--r", "1", "--format", "json")
    h = from_json(json.loads(out)["result"])
    assert h.format() == "3 + z^2 + w^2"


def test_count_json_checks(capsys):
    _, out, _ = run(capsys, "count", "--n", "2", "--m", "1", "--r", "3", "--q", "5", "--format", "json")
    doc = json.loads(out)
    assert doc["checks"] == [{"name": "oracle agreement", "status": "PASS"}]
    assert doc["result"]["fused"] == doc["result"]["formula"] == doc["result"]["bruteforce"] == "31"


def test_output_is_deterministic(capsys):
    argv = ["mhp", "--n", "2", "--mu", "11,11,11,11", "--format", "json", "--no-timing"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_latex_output(capsys):
    _, out, _ = run(capsys, "mhp", "--n", "2", "--mu", "11,11", "--m", "1", "--r", "1", "--format", "latex")
    assert out.splitlines()[0] == "1 + 3qt^{2} + q^{2}t^{2}"


def test_out_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    run(capsys, "epoly", "--n", "2", "--m", "1", "--r", "3", "--out", str(target))
    assert target.read_text() == "1 + q + q^2\n"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["hpoly", "--n", "2", "--mu", "12x"], 2),
        (["hpoly", "--n", "2", "--mu", "21,111"], 2),
        (["hpoly", "--n", "2", "--m", "2", "--r", "1"], 2),
        (["hpoly", "--n", "2"], 2),
        (["nonsense"], 2),
        (["hpoly", "--n", "5", "--m", "1"], 3),
        (["count", "--n", "2", "--m", "1", "--r", "3", "--q", "11"], 3),
        (["count", "--n", "2", "--m", "1", "--r", "3"], 2),
        (["hecke-spectrum", "--n", "3", "--q", "5", "--max-q", "5"], 3),
        (["macdonald", "2211111"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wildhodge.cli", "hpoly", "--n", "2", "--mu", "11,11,11"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "1"


def test_disagreement_exit_code(capsys, monkeypatch):
    from fractions import Fraction

    from wildhodge import fq

    monkeypatch.setattr(fq, "fused_count", lambda *a, **k: Fraction(30))
    code, out, _ = run(capsys, "count", "--n", "2", "--m", "1", "--r", "3", "--q", "5")
    assert code == 4 and out.rstrip().endswith("FAIL")


def test_verify_failure_exit_code(capsys, monkeypatch):
    from wildhodge import hodge

    monkeypatch.setattr(hodge, "swap_symmetric", lambda f: False)
    code, out, _ = run(capsys, "verify", "symmetry", "--n", "2")
    assert code == 1 and "FAIL" in out
