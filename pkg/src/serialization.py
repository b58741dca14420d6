"""
Curve specs and output rendering
--------------------------------
A curve spec is the JSON document every command starts from:

    {"p": 3, "r": 1, "modulus": null, "a": [[0], [0], [0], [2], [2]]}

"a" lists c1, c2, c3, c4, c6 as F_p-digit vectors. Outputs are JSON with sorted
keys, or pandas tables in pretty mode.
"""

from __future__ import annotations
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator

from src.fields.finite_field import MAX_Q, FiniteField
from src.fields.function_field import KContext

logger = logging.getLogger(__name__)


class CurveSpec(BaseModel):
    """Weierstrass curve y^2 + c1 t y + c3 y = t^3 + c2 t^2 + c4 t + c6 over F_(p^r)."""
    p: int = Field(description="Characteristic of the constant field")
    r: int = Field(default=1, description="Extension degree of F_q over F_p")
    modulus: Optional[List[int]] = Field(default=None, description="Little-endian monic modulus for F_q when r > 1")
    a: List[List[int]] = Field(description="c1, c2, c3, c4, c6 as F_p-digit vectors")

    @field_validator("p")
    @classmethod
    def _p_at_least_two(cls, v: int) -> int:
        if v < 2:
            raise ValueError("p must be a prime >= 2")
        return v

    @field_validator("r")
    @classmethod
    def _r_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("r must be >= 1")
        return v

    @field_validator("a")
    @classmethod
    def _five_coefficients(cls, v: List[List[int]]) -> List[List[int]]:
        if len(v) != 5:
            raise ValueError("a must list exactly five coefficients c1, c2, c3, c4, c6")
        return v

    @model_validator(mode="after")
    def _digits_in_range(self) -> "CurveSpec":
        if self.p ** self.r > MAX_Q:
            raise ValueError(f"q = {self.p ** self.r} exceeds the supported maximum {MAX_Q}")
        for digits in self.a:
            if len(digits) > self.r or any(not 0 <= d < self.p for d in digits):
                raise ValueError(f"{digits} is not an F_p-digit vector of length <= {self.r}")
        if self.modulus is not None and len(self.modulus) != self.r + 1:
            raise ValueError("modulus must have degree r")
        return self

    @property
    def q(self) -> int:
        return self.p ** self.r

    def build_context(self) -> KContext:
        F = FiniteField(self.p, self.r, self.modulus)
        return KContext(F, [F.from_digits(d) for d in self.a])


def load_curve_spec(path: Union[str, Path]) -> CurveSpec:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        raw = json.load(fh)
    spec = CurveSpec.model_validate(raw)
    logger.debug("loaded curve spec %s: q=%d", path, spec.q)
    return spec


def load_context(path: Union[str, Path]) -> KContext:
    return load_curve_spec(path).build_context()


# ---- output ---------------------------------------------------------------------
def _jsonable(obj: Any) -> Any:
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(payload: Any) -> str:
    """Deterministic JSON: sorted keys, integer dict keys rendered as strings."""
    return json.dumps(_jsonable(payload), sort_keys=True)


def to_frame(rows: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(list(rows))


def render_pretty(rows: Sequence[Dict[str, Any]], title: Optional[str] = None) -> str:
    """A list of records as an aligned table."""
    if not rows:
        return title or ""
    with pd.option_context("display.max_colwidth", None, "display.width", 200):
        table = to_frame(rows).to_string(index=False)
    return f"{title}\n{table}" if title else table


def key_value_rows(mapping: Dict[str, Any]) -> List[Dict[str, Any]]:
    return [{"key": k, "value": v} for k, v in mapping.items()]
