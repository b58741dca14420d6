"""
Writes the shipped curve specs.

ex82: q = 3, y^2 = t^3 - t - 1.
ex83: q = 4, y^2 + y = t^3 + c with c^2 + c + 1 = 0, i.e. c = x in F_2[x]/(x^2 + x + 1).
"""

import json
from pathlib import Path

from src.serialization import CurveSpec

HERE = Path(__file__).resolve().parent

SPECS = {
    "ex82.json": CurveSpec(p=3, r=1, modulus=None, a=[[0], [0], [0], [2], [2]]),
    "ex83.json": CurveSpec(p=2, r=2, modulus=[1, 1, 1], a=[[0, 0], [0, 0], [1, 0], [0, 0], [0, 1]]),
}


def write_specs(directory: Path = HERE) -> None:
    for name, spec in SPECS.items():
        spec.build_context()
        path = directory / name
        path.write_text(json.dumps(spec.model_dump(), sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    write_specs()
