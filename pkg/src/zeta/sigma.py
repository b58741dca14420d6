"""
Special zeta vector
-------------------
For b in A and 1 <= n <= q-1 the polynomial F = (-1)^n f^n b_bar G^n expands in
the sigma-basis of the dual motive,

    F = sum_(j <= q+e) sum_k d_(k,j) sigma^j(h_(n-k+1)),

and d = sum_j d_j^(j) is the vector whose preimage under Exp carries
C * zeta(b; n) in its last coordinate. Negative twists are avoided by
expanding F^(J) at J = q + e and extracting (J - j)-fold q-th roots at the end.
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Any, Dict, List, Optional, Tuple

from src.curve.curve_function import CurveFunc, CurveRing
from src.curve.points import point_frobenius, point_mul, point_negate, xi
from src.errors import InternalCheckError, NotAPower, RangeUnsupported
from src.fields.function_field import KElem
from src.fields.matrix import Mat
from src.shtuka.shtuka_function import ShtukaData
from src.shtuka.tensor_basis import TensorBasis
from src.zeta.power_sums import power_sum_bruteforce

logger = logging.getLogger(__name__)


def script_G(ring: CurveRing, S: ShtukaData) -> CurveFunc:
    """G with G^(i)(Xi) = f(V^(i)); alpha_bar, beta_bar are V's coordinates under theta -> t, eta -> y."""
    ctx = ring.ctx
    alpha, beta = S.alpha, S.beta
    a_bar, b_bar = ring.from_a_elem(alpha), ring.from_a_elem(beta)
    lin = b_bar + a_bar * ctx.const(ctx.a1) + ctx.const(ctx.a3)
    first = (lin + beta) / (ring.const(alpha) - a_bar)
    second = (b_bar ** ctx.q + lin) / (a_bar ** ctx.q - a_bar)
    return first - second


@dataclass(frozen=True)
class SigmaExpansion:
    n: int
    b: KElem
    e: int
    b_prime: int
    J: int
    dJ: Dict[Tuple[int, int], KElem]
    d_twisted: Tuple[Tuple[KElem, ...], ...]
    d_total: Tuple[KElem, ...]
    C: KElem

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n, "b": self.b.to_json(), "e": self.e, "b_prime": self.b_prime, "J": self.J,
            "dJ": [{"k": k, "j": j, "value": v.to_json()} for (k, j), v in sorted(self.dJ.items())],
            "summands": [[x.to_json() for x in vec] for vec in self.d_twisted],
            "d": [x.to_json() for x in self.d_total],
            "C": self.C.to_json(),
        }


def _check_range(tb: TensorBasis, b: KElem) -> None:
    q = tb.ctx.q
    if not 1 <= tb.n <= q - 1:
        raise RangeUnsupported(f"zeta values are supported for 1 <= n <= {q - 1}, got n = {tb.n}")
    if b.is_zero() or not b.is_integral():
        raise ValueError("b must be a nonzero element of A")


def zeta_constant(tb: TensorBasis) -> KElem:
    """C = (-1)^(n+1) h_1(-Xi) / (theta - t([n]V^(1)))."""
    ring, ctx, n = tb.ring, tb.ctx, tb.n
    X = xi(ctx)
    P = point_mul(ctx, n, point_frobenius(ctx, tb.S.V, 1))
    if P.is_infinity:
        raise InternalCheckError("[n]V^(1) is the point at infinity")
    sign = ctx.one if n % 2 else -ctx.one
    return sign * ring.eval(tb.h[0], point_negate(ctx, X)) / (ctx.theta - P.x)


def zeta_polynomial(tb: TensorBasis, b: KElem, G: Optional[CurveFunc] = None) -> CurveFunc:
    """(-1)^n f^n b_bar G^n, which lies in K[t, y]."""
    ring, n = tb.ring, tb.n
    G = G if G is not None else script_G(ring, tb.S)
    F = (tb.S.f * G) ** n * ring.from_a_elem(b)
    if n % 2:
        F = -F
    if F.den != ring.kp.one:
        raise InternalCheckError("f^n b_bar G^n is not a polynomial in t, y")
    return F


def sigma_expand(tb: TensorBasis, b: KElem) -> SigmaExpansion:
    _check_range(tb, b)
    ring, ctx, n = tb.ring, tb.ctx, tb.n
    e, b_prime = divmod(b.deg(), n)
    J = ctx.q + e
    R = zeta_polynomial(tb, b).twist(J)
    top = (J + 1) * n
    dJ: Dict[Tuple[int, int], KElem] = {}
    while not R.is_zero():
        deg, sgn = ring.deg_sgn(R)
        i = deg - n
        if not 1 <= i <= top:
            raise InternalCheckError(f"remainder of degree {deg} lies outside the sigma-basis degrees")
        j, k_h = (i - 1) // n, (i - 1) % n + 1
        key = (n - k_h + 1, j)
        if key in dJ:
            raise InternalCheckError(f"sigma-basis element {i} met twice")
        dJ[key] = sgn
        R = R - tb.h_ext(i, J) * sgn
    for (k, j) in dJ:
        if j == J and n - k + 1 > b_prime:
            raise InternalCheckError(f"top-twist coefficient d_({k},{j}) should vanish")

    vectors: List[List[KElem]] = [[ctx.zero] * n for _ in range(J + 1)]
    for (k, j), c in dJ.items():
        try:
            vectors[j][k - 1] = ctx.qth_root_k(c, J - j)
        except NotAPower as exc:
            raise InternalCheckError(f"d_({k},{j}) is not rational after untwisting: {exc}") from exc
    total = [ctx.zero] * n
    for vec in vectors:
        total = [a + x for a, x in zip(total, vec)]
    logger.info("sigma expansion: n=%d, deg b=%d, J=%d, %d nonzero coefficients", n, b.deg(), J, len(dJ))
    return SigmaExpansion(n, b, e, b_prime, J, dJ,
                          tuple(tuple(v) for v in vectors), tuple(total), zeta_constant(tb))


def reconstruction_residual(tb: TensorBasis, sx: SigmaExpansion) -> CurveFunc:
    """F^(J) minus its sigma-basis expansion."""
    R = zeta_polynomial(tb, sx.b).twist(sx.J)
    n = tb.n
    for (k, j), c in sx.dJ.items():
        R = R - tb.h_ext(j * n + (n - k + 1), sx.J) * c
    return R


# ---- per-term identities ------------------------------------------------------
def zeta_term(tb: TensorBasis, b: KElem, i: int, G: Optional[CurveFunc] = None,
              C: Optional[KElem] = None) -> KElem:
    """b_bar ((-f G)^(i))^n / (C h_1 (f^(1) ... f^(i))^n) at Xi."""
    ring, ctx, n = tb.ring, tb.ctx, tb.n
    G = G if G is not None else script_G(ring, tb.S)
    C = C if C is not None else zeta_constant(tb)
    factors = [(ring.from_a_elem(b), 1), (tb.f_tw(i), n), (G.twist(i), n), (tb.h[0], -1)]
    factors += [(tb.f_tw(j), -n) for j in range(1, i + 1)]
    value = ring.eval_product(factors, xi(ctx)) / C
    return value if n % 2 == 0 else -value


def zeta_term_check(tb: TensorBasis, b: KElem, i: int, G: Optional[CurveFunc] = None,
                    C: Optional[KElem] = None) -> bool:
    return zeta_term(tb, b, i, G, C) == b * power_sum_bruteforce(tb.ctx, i, tb.n)


def check_C(tb: TensorBasis, G: Optional[CurveFunc] = None) -> bool:
    """C agrees with ((-f G)^n / h_1) at Xi."""
    ring, n = tb.ring, tb.n
    G = G if G is not None else script_G(ring, tb.S)
    value = ring.eval_product([(tb.S.f, n), (G, n), (tb.h[0], -1)], xi(tb.ctx))
    if n % 2:
        value = -value
    return value == zeta_constant(tb)


def bottom_row(P: Mat) -> Tuple[KElem, ...]:
    return tuple(P[-1])


def regrouped_term(tb: TensorBasis, sx: SigmaExpansion, log_mats, i: int) -> KElem:
    """sum_(j <= min(i, J)) (bottom row of P_(i-j)) . (d_j^(j))^(i-j)."""
    ctx = tb.ctx
    acc = ctx.zero
    for j in range(min(i, sx.J) + 1):
        row = bottom_row(log_mats[i - j])
        for r, d in zip(row, sx.d_twisted[j]):
            if not r.is_zero() and not d.is_zero():
                acc = acc + r * d.twist(i - j)
    return acc


def regrouped_term_check(tb: TensorBasis, sx: SigmaExpansion, log_mats, i: int) -> bool:
    lhs = sx.C * sx.b * power_sum_bruteforce(tb.ctx, i, tb.n)
    return lhs == regrouped_term(tb, sx, log_mats, i)
