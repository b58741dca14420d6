import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from src.serialization import CurveSpec, dumps, load_curve_spec, render_pretty

DATA = Path(__file__).resolve().parent.parent / "data"
EX82, EX83 = DATA / "ex82.json", DATA / "ex83.json"


def test_fixture_specs_load():
    spec = load_curve_spec(EX83)
    assert (spec.p, spec.r, spec.q) == (2, 2, 4)
    ctx = spec.build_context()
    assert ctx.q == 4
    assert load_curve_spec(EX82).q == 3


@pytest.mark.parametrize("raw", [
    {"p": 1, "a": [[0]] * 5},
    {"p": 3, "r": 0, "a": [[0]] * 5},
    {"p": 3, "a": [[0]] * 4},
    {"p": 3, "a": [[0], [0], [0], [3], [2]]},
    {"p": 2, "r": 2, "a": [[0, 0, 1], [0], [1], [0], [1]]},
    {"p": 2, "r": 2, "modulus": [1, 1], "a": [[0], [0], [1], [0], [1]]},
    {"p": 2, "r": 9, "a": [[0], [0], [1], [0], [1]]},
    {"a": [[0]] * 5},
])
def test_invalid_specs(raw):
    with pytest.raises(ValidationError):
        CurveSpec.model_validate(raw)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_curve_spec(tmp_path / "nope.json")


def test_dumps_is_deterministic(ctx82):
    payload = {"z": 1, "a": {2: ctx82.theta, 1: [ctx82.one]}}
    text = dumps(payload)
    assert text == dumps(dict(reversed(list(payload.items()))))
    decoded = json.loads(text)
    assert list(decoded) == ["a", "z"]
    assert list(decoded["a"]) == ["1", "2"]


def test_render_pretty():
    out = render_pretty([{"key": "q", "value": 3}, {"key": "h", "value": 1}], title="curve-info")
    lines = out.splitlines()
    assert lines[0] == "curve-info"
    assert "key" in lines[1] and "value" in lines[1]
    assert render_pretty([], title="empty") == "empty"
