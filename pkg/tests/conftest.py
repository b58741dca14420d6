import sys, os
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

from pathlib import Path

import pytest

from src.curve_stack import CurveStack
from src.serialization import load_context

DATA = Path(__file__).resolve().parent.parent / "data"
EX82 = DATA / "ex82.json"
EX83 = DATA / "ex83.json"


@pytest.fixture(scope="session")
def ctx82():
    return load_context(EX82)


@pytest.fixture(scope="session")
def ctx83():
    return load_context(EX83)


@pytest.fixture(scope="session")
def stacks(ctx82, ctx83):
    """CurveStack per (curve, n), built once per session."""
    cache = {}

    def get(name: str, n: int) -> CurveStack:
        key = (name, n)
        if key not in cache:
            cache[key] = CurveStack({"ex82": ctx82, "ex83": ctx83}[name], n)
        return cache[key]

    return get
