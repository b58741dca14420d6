"""
Zeta vectors
------------
Bundles the constant C and the vector d that express zeta(b; n) through the
logarithm, together with the per-term identity checks and, on request, the
tail check at the infinite place.
"""

from __future__ import annotations
import logging
from typing import Any, Dict, NamedTuple, Optional, Tuple

from src.anderson.coefficients import CoeffSeries
from src.config import DEFAULT_PRECISION, TAIL_STEP, TAIL_T
from src.fields.function_field import KElem
from src.infinite.tail import tail_check
from src.shtuka.tensor_basis import TensorBasis
from src.zeta.sigma import (SigmaExpansion, check_C, reconstruction_residual, regrouped_term_check,
                            script_G, sigma_expand, zeta_term_check)

logger = logging.getLogger(__name__)


class ZetaVector(NamedTuple):
    C: KElem
    d: Tuple[KElem, ...]
    report: Dict[str, Any]
    expansion: SigmaExpansion


def zeta_vector(tb: TensorBasis, b: KElem, terms: int = 4, log: Optional[CoeffSeries] = None,
                tail: bool = False, precision: int = DEFAULT_PRECISION, T: int = TAIL_T,
                step: int = TAIL_STEP) -> ZetaVector:
    """C and d for zeta(b; n), with the per-term checks and optionally the tail check."""
    sx = sigma_expand(tb, b)
    G = script_G(tb.ring, tb.S)
    report: Dict[str, Any] = {
        "C_matches": check_C(tb, G),
        "reconstruction_zero": reconstruction_residual(tb, sx).is_zero(),
        "zeta_terms": {i: zeta_term_check(tb, b, i, G, sx.C) for i in range(terms + 1)},
    }
    if log is not None:
        depth = min(terms, len(log) - 1)
        report["regrouped_terms"] = {i: regrouped_term_check(tb, sx, log, i) for i in range(depth + 1)}
    if tail:
        report["tail"] = tail_check(tb, b, T=T, N=precision, step=step, sx=sx)
    return ZetaVector(sx.C, sx.d_total, report, sx)
