"""
Tail check at the infinite place
--------------------------------
Compares C*b*sum_(i<=T) S_i(n) with the logarithm side built from the bottom
rows of P_m and the sigma-expansion vectors, all in K_inf. The regrouped
pairing matches term by term; it passes only when the difference vanishes
and its tracked precision reaches past the leading coefficient of the zeta
side ("certified"). When some Log(d_j^(j)) diverges its pieces grow with T and
cancellation eats precision, so the check reruns at a higher precision until
the rows are certified, and raises PrecisionError past MAX_PRECISION_FACTOR
times the requested one. The naive pairing against the summed vector d only
converges when every d_j^(j) lies in the logarithm's domain of convergence,
so it is reported, not required.
"""

from __future__ import annotations
import logging
from typing import Any, Dict, List, Optional, Sequence

from src.config import DEFAULT_PRECISION, TAIL_STEP, TAIL_T
from src.curve.points import xi
from src.errors import PrecisionError
from src.fields.function_field import KContext, KElem
from src.infinite.laurent import EXACT, LaurentK, embed_K, embed_twisted_eval
from src.shtuka.tensor_basis import TensorBasis
from src.zeta.power_sums import iter_monic
from src.zeta.sigma import SigmaExpansion, sigma_expand

logger = logging.getLogger(__name__)

# Ceiling on automatic precision raises, as a multiple of the requested precision.
MAX_PRECISION_FACTOR = 16


def _zero(ctx: KContext) -> LaurentK:
    return LaurentK(ctx.R, EXACT, (), EXACT)


def power_sum_embedded(ctx: KContext, i: int, s: int, N: int = DEFAULT_PRECISION) -> LaurentK:
    """S_i(s) summed directly in K_inf."""
    total = _zero(ctx)
    for a in iter_monic(ctx, i):
        total = total + embed_K(ctx, a, N) ** (-s)
    return total


class LogSide:
    """Bottom rows of P_m at Xi, evaluated in K_inf from h^(m) and f^(l)."""

    def __init__(self, tb: TensorBasis, N: int):
        self.tb, self.N = tb, N
        ctx = tb.ctx
        self._den = [embed_K(ctx, tb.ring.eval(tb.h[0], xi(ctx)), N)]
        self._rows: List[List[LaurentK]] = []

    def row(self, m: int) -> List[LaurentK]:
        tb, N, n = self.tb, self.N, self.tb.n
        while len(self._rows) <= m:
            k = len(self._rows)
            while len(self._den) <= k:
                l = len(self._den)
                self._den.append(self._den[-1] * embed_twisted_eval(tb.S.f, l, N) ** n)
            den = self._den[k]
            self._rows.append([embed_twisted_eval(tb.h[n - c], k, N) / den for c in range(1, n + 1)])
            logger.debug("bottom row of P_%d embedded", k)
        return self._rows[m]

    def pair(self, m: int, vec: Sequence[KElem]) -> LaurentK:
        """row(P_m) . vec^(m)."""
        ctx = self.tb.ctx
        acc = _zero(ctx)
        for r, d in zip(self.row(m), vec):
            if not d.is_zero():
                acc = acc + r * embed_K(ctx, d, self.N).frobenius(m, rel=self.N)
        return acc


def _summary(x: LaurentK) -> Dict[str, Any]:
    return {"val": x.val, "prec": x.prec, "zero": x.is_zero()}


def regrouped_row(diff: LaurentK, zeta_T: LaurentK) -> Dict[str, Any]:
    """Verdict at one cut-off: diff vanishes and is known past the leading term of the zeta side."""
    certified = diff.prec > zeta_T.val
    return dict(_summary(diff), zeta_val=zeta_T.val, certified=certified, ok=diff.is_zero() and certified)


def raised_precision(N: int, rows: Dict[int, Dict[str, Any]], max_precision: int) -> int:
    """Next relative precision for rows that vanish without being certified."""
    deficit = max(r["zeta_val"] - r["prec"] + 1 for r in rows.values() if r["zero"] and not r["certified"])
    nxt = max(2 * N, N + deficit)
    if nxt > max_precision:
        raise PrecisionError(f"regrouped difference is zero only to u^{min(r['prec'] for r in rows.values())}; "
                             f"certifying it needs precision {nxt} > {max_precision}")
    return nxt


def tail_check(tb: TensorBasis, b: KElem, T: int = TAIL_T, T_prime: Optional[int] = None,
               N: int = DEFAULT_PRECISION, step: int = TAIL_STEP,
               sx: Optional[SigmaExpansion] = None, max_precision: Optional[int] = None) -> Dict[str, Any]:
    if T < 0 or step < 1:
        raise ValueError("tail check needs T >= 0 and step >= 1")
    T_prime = T if T_prime is None else T_prime
    sx = sx if sx is not None else sigma_expand(tb, b)
    max_precision = max_precision if max_precision is not None else N * MAX_PRECISION_FACTOR
    requested = N
    while True:
        rows, naive = _tail_at(tb, b, sx, T, T_prime, step, N)
        if all(r["certified"] or not r["zero"] for r in rows.values()):
            break
        nxt = raised_precision(N, rows, max_precision)
        logger.info("tail check: regrouped difference not certified at precision %d; retrying with %d", N, nxt)
        N = nxt

    passed = all(r["ok"] for r in rows.values())
    report: Dict[str, Any] = {"T": T, "T_prime": T_prime, "step": step, "precision": N,
                              "requested_precision": requested, "regrouped": rows, "naive": naive,
                              "passed": passed}
    logger.info("tail check: regrouped %s at precision %d, naive valuations %d -> %d",
                "PASS" if passed else "FAIL", N, naive["first"]["val"], naive["second"]["val"])
    return report


def _tail_at(tb: TensorBasis, b: KElem, sx: SigmaExpansion, T: int, T_prime: int, step: int, N: int):
    """Regrouped rows and the naive pairing at relative precision N."""
    ctx = tb.ctx
    top = max(T, T_prime) + step
    Cb = embed_K(ctx, sx.C * b, N)
    partial = [_zero(ctx)]
    for i in range(top + 1):
        partial.append(partial[-1] + power_sum_embedded(ctx, i, tb.n, N))
    zeta = [Cb * s for s in partial[1:]]

    log = LogSide(tb, N)

    def regrouped(T_: int) -> LaurentK:
        acc = _zero(ctx)
        for j in range(min(T_, sx.J) + 1):
            for m in range(T_ - j + 1):
                acc = acc + log.pair(m, sx.d_twisted[j])
        return acc

    def naive(T_: int) -> LaurentK:
        acc = _zero(ctx)
        for m in range(T_ + 1):
            acc = acc + log.pair(m, sx.d_total)
        return acc

    rows = {T_: regrouped_row(zeta[T_] - regrouped(T_), zeta[T_]) for T_ in (T, T + step)}
    first = zeta[T_prime] - naive(T)
    second = zeta[T_prime + step] - naive(T + step)
    return rows, {"first": _summary(first), "second": _summary(second), "converges": second.val > first.val}
