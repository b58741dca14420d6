"""
Drinfeld divisor and shtuka function
------------------------------------
V = (alpha, beta) is the point of E(K) with V - V^(1) = Xi, searched among
sign-one A-elements alpha = theta + b, beta = eta + c*theta + d. The shtuka
function is f = nu/delta with nu the line through Xi and V^(1) and
delta = t - alpha, so div(f) = (V^(1)) - (V) + (Xi) - (inf).
"""

from __future__ import annotations
from dataclasses import dataclass
import itertools
import logging
from typing import Any, Dict

from src.curve.curve_function import CurveFunc, CurveRing
from src.curve.points import Point, class_number, on_curve, point_frobenius, point_sub, xi
from src.errors import ClassNumberUnsupported, InternalCheckError, SearchExhausted
from src.fields.function_field import KContext, KElem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShtukaData:
    V: Point
    m: KElem
    nu: CurveFunc
    delta: CurveFunc
    f: CurveFunc

    @property
    def alpha(self) -> KElem:
        return self.V.x

    @property
    def beta(self) -> KElem:
        return self.V.y

    def to_json(self) -> Dict[str, Any]:
        return {"V": self.V.to_json(), "m": self.m.to_json(), "nu": self.nu.to_json(),
                "delta": self.delta.to_json(), "f": self.f.to_json()}


def find_V(ctx: KContext) -> Point:
    h = class_number(ctx)
    if h != 1:
        raise ClassNumberUnsupported(h)
    X = xi(ctx)
    theta, eta = ctx.theta, ctx.eta
    for b, c, d in itertools.product(range(ctx.q), repeat=3):
        alpha = theta + ctx.const(b)
        beta = eta + ctx.const(c) * theta + ctx.const(d)
        V = Point(alpha, beta)
        if not on_curve(ctx, V):
            continue
        if point_sub(ctx, V, point_frobenius(ctx, V, 1), check=False) == X:
            logger.info("Drinfeld divisor found: V = %s", V)
            return V
    raise SearchExhausted("no V = (theta + b, eta + c*theta + d) satisfies V - V^(1) = Xi")


def shtuka(ring: CurveRing, V: Point, check: bool = True) -> ShtukaData:
    ctx = ring.ctx
    X = xi(ctx)
    V1 = point_frobenius(ctx, V, 1)
    nu = ring.line_through(X, V1)
    # nu = y - eta - m(t - theta)
    m = -nu.numU[1] if len(nu.numU) > 1 else ctx.zero
    delta = ring.vertical(V)
    f = nu / delta
    S = ShtukaData(V, m, nu, delta, f)
    if check:
        verify_shtuka(ring, S)
    return S


def verify_shtuka(ring: CurveRing, S: ShtukaData) -> None:
    """Divisor (V^(1)) - (V) + (Xi) - (inf) and sign one."""
    ctx = ring.ctx
    X = xi(ctx)
    V1 = point_frobenius(ctx, S.V, 1)
    expected = [(X, 1), (S.V, -1), (V1, 1)]
    for P, e in expected:
        got = ring.order_at(S.f, P)
        if got != e:
            raise InternalCheckError(f"ord_{P}(f) = {got}, expected {e}")
    deg, sgn = ring.deg_sgn(S.f)
    if deg != 1 or not sgn.is_one():
        raise InternalCheckError(f"shtuka function has deg {deg} and sign {sgn}")
