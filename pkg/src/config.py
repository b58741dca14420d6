"""
Runtime configuration.
Defaults come from the environment (a local .env is honoured) and are
validated into a RunConfig for each CLI invocation.
"""

import os
from typing import Literal, Optional
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

load_dotenv()

DEFAULT_PRECISION = int(os.getenv("DRINFELD_PRECISION", "64"))
LOCAL_EXPANSION_TERMS = int(os.getenv("DRINFELD_LOCAL_TERMS", "16"))
DEFAULT_SEED = int(os.getenv("DRINFELD_SEED", "20240521"))
PROPERTY_CASES = int(os.getenv("DRINFELD_PROPERTY_CASES", "1000"))
TAIL_T = int(os.getenv("DRINFELD_TAIL_T", "4"))
TAIL_STEP = int(os.getenv("DRINFELD_TAIL_STEP", "2"))
LOG_LEVEL = os.getenv("DRINFELD_LOG_LEVEL", "WARNING")
DATA_DIR = os.getenv("DRINFELD_DATA_DIR", "data")


class RunConfig(BaseModel):
    """Validated options for one CLI run."""
    spec: str = Field(description="Path to the curve-spec JSON file")
    command: str = Field(description="Subcommand name")
    n: int = Field(default=1, description="Tensor power / dimension of the Anderson module")
    terms: int = Field(default=4, description="Number of coefficients or zeta terms to compute")
    precision: int = Field(default=DEFAULT_PRECISION, description="Laurent precision at the infinite place")
    b: str = Field(default="1", description="A-expression for the zeta parameter b")
    s: int = Field(default=1, description="Exponent s of the power sums")
    mode: Literal["brute", "closed"] = Field(default="brute", description="Power-sum evaluation strategy")
    depth: int = Field(default=3, description="tau-depth for functional-equation checks")
    output: Literal["json", "pretty"] = Field(default="json", description="Output rendering")
    seed: int = Field(default=DEFAULT_SEED, description="Seed for randomized property checks")
    graph: bool = Field(default=False, description="Print the verify pipeline instead of running it")
    tail: bool = Field(default=False, description="Run the infinite-place tail check with zeta-vector")
    tail_T: int = Field(default=TAIL_T, description="Cut-off T of the tail check")
    tail_step: int = Field(default=TAIL_STEP, description="Step between the two tail cut-offs")
    cases: Optional[int] = Field(default=None, description="Randomized cases per property suite")

    @field_validator("n")
    @classmethod
    def _n_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("n must be >= 1")
        return v

    @field_validator("terms", "depth", "tail_T")
    @classmethod
    def _non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("must be >= 0")
        return v

    @field_validator("precision")
    @classmethod
    def _precision_floor(cls, v: int) -> int:
        if v < 8:
            raise ValueError("precision must be >= 8")
        return v

    @field_validator("tail_step")
    @classmethod
    def _step_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("tail step must be >= 1")
        return v

    @field_validator("s")
    @classmethod
    def _s_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("s must be >= 1")
        return v
