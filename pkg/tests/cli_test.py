import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

import json
from pathlib import Path

import pytest

from app import main
from src.serialization import dumps

DATA = Path(__file__).resolve().parent.parent / "data"
EX82, EX83 = str(DATA / "ex82.json"), str(DATA / "ex83.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_curve_info(capsys):
    code, out, _ = run(capsys, "curve-info", EX83)
    assert code == 0
    assert json.loads(out) == {"h": 1, "nonsingular": True, "q": 4}


def test_shtuka(capsys, stacks):
    code, out, _ = run(capsys, "shtuka", EX82)
    assert code == 0
    payload = json.loads(out)
    assert payload["f"] == json.loads(dumps(stacks("ex82", 1).S.f))


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "curve-info", EX82, "--pretty")
    assert code == 0
    assert out.splitlines()[0].startswith("curve-info")


def test_exp_terms(capsys):
    code, out, _ = run(capsys, "exp", EX82, "--n", "2", "--terms", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 2
    assert [c["index"] for c in payload["coefficients"]] == [0, 1, 2]


def test_zeta_power_sums(capsys, ctx82):
    code, out, _ = run(capsys, "zeta", EX82, "--terms", "2", "--mode", "closed")
    assert code == 0
    terms = json.loads(out)["terms"]
    assert len(terms) == 3
    expected = -(ctx82.theta ** 3 - ctx82.theta).inv()
    assert terms[2]["S"] == json.loads(dumps(expected))


@pytest.mark.parametrize("argv", [
    ("frobnicate", EX82),
    ("curve-info",),
    ("curve-info", EX82, "--json", "--pretty"),
    ("zeta-vector", EX82, "--n", "3"),
    ("zeta", EX82, "--b", "Y^2"),
    ("exp", EX82, "--n", "0"),
    ("zeta-vector", EX82, "--n", "2", "--tail", "--tail-step", "0"),
    ("verify", EX82, "--tail-T", "-1"),
    ("curve-info", str(DATA / "missing.json")),
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_library_error_exit_code(capsys, tmp_path):
    spec = tmp_path / "h4.json"
    spec.write_text(json.dumps({"p": 3, "a": [[0], [0], [0], [2], [0]]}))
    code, out, _ = run(capsys, "shtuka", str(spec))
    assert code == 1
    assert json.loads(out)["type"] == "ClassNumberUnsupported"


def test_verify_graph(capsys):
    code, out, _ = run(capsys, "verify", EX82, "--graph")
    assert code == 0
    assert "exp_log" in json.loads(out)["mermaid"]


def test_zeta_vector_q3(capsys):
    code, out, _ = run(capsys, "zeta-vector", EX82, "--n", "2", "--terms", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["checks"]["C_matches"]
    assert payload["J"] == 3


@pytest.mark.slow
def test_verify_q3(capsys):
    code, out, _ = run(capsys, "verify", EX82, "--n", "2", "--depth", "3")
    assert code == 0
    assert json.loads(out)["passed"]
