"""
Points of E over K
------------------
Affine points plus the point at infinity, the Weierstrass chord-tangent group
law, scalar multiples, coordinatewise Frobenius, and the class number of A
(= #E(F_q)) by exhaustive count.
"""

from __future__ import annotations
from dataclasses import dataclass
import math
from typing import Any, Dict, Optional, Tuple

from src.errors import OffCurvePoint
from src.fields.function_field import KContext, KElem


@dataclass(frozen=True)
class Point:
    x: Optional[KElem] = None
    y: Optional[KElem] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def to_json(self) -> Dict[str, Any]:
        if self.is_infinity:
            return {"inf": True}
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    def __str__(self) -> str:
        return "∞" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = Point()


def on_curve(ctx: KContext, P: Point) -> bool:
    if P.is_infinity:
        return True
    x, y = P.x, P.y
    a1, a2, a3, a4, a6 = (ctx.const(c) for c in ctx.curve_coeffs())
    lhs = y * y + a1 * x * y + a3 * y
    rhs = x * x * x + a2 * x * x + a4 * x + a6
    return lhs == rhs


def affine(ctx: KContext, x: KElem, y: KElem, check: bool = True) -> Point:
    P = Point(x, y)
    if check and not on_curve(ctx, P):
        raise OffCurvePoint(f"({x}, {y}) does not satisfy the Weierstrass equation")
    return P


def xi(ctx: KContext) -> Point:
    """The generic point Xi = (theta, eta)."""
    return Point(ctx.theta, ctx.eta)


def point_negate(ctx: KContext, P: Point) -> Point:
    if P.is_infinity:
        return P
    a1, a3 = ctx.const(ctx.a1), ctx.const(ctx.a3)
    return Point(P.x, -P.y - a1 * P.x - a3)


def tangent_slope(ctx: KContext, P: Point) -> Tuple[KElem, KElem]:
    """(numerator, denominator) of the tangent slope at P."""
    a1, a2, a3, a4 = (ctx.const(c) for c in (ctx.a1, ctx.a2, ctx.a3, ctx.a4))
    num = 3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y
    den = 2 * P.y + a1 * P.x + a3
    return num, den


def point_add(ctx: KContext, P: Point, Q: Point, check: bool = True) -> Point:
    """P + Q. Pass check=False only for points already known to lie on E."""
    if check:
        for R in (P, Q):
            if not on_curve(ctx, R):
                raise OffCurvePoint(f"{R} is not on the curve")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3 = (ctx.const(c) for c in (ctx.a1, ctx.a2, ctx.a3))
    if P.x == Q.x:
        if (P.y + Q.y + a1 * Q.x + a3).is_zero():
            return INFINITY
        num, den = tangent_slope(ctx, P)
        lam = num / den
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - a3 - (P.y - lam * P.x)
    return Point(x3, y3)


def point_sub(ctx: KContext, P: Point, Q: Point, check: bool = True) -> Point:
    return point_add(ctx, P, point_negate(ctx, Q), check=check)


def point_mul(ctx: KContext, k: int, P: Point) -> Point:
    if not on_curve(ctx, P):
        raise OffCurvePoint(f"{P} is not on the curve")
    if k < 0:
        return point_mul(ctx, -k, point_negate(ctx, P))
    result, addend = INFINITY, P
    while k:
        if k & 1:
            result = point_add(ctx, result, addend, check=False)
        k >>= 1
        if k:
            addend = point_add(ctx, addend, addend, check=False)
    return result


def point_frobenius(ctx: KContext, P: Point, k: int = 1) -> Point:
    if P.is_infinity or k == 0:
        return P
    return Point(ctx.frobenius(P.x, k), ctx.frobenius(P.y, k))


def point_from_json(ctx: KContext, obj: Dict[str, Any]) -> Point:
    if obj.get("inf"):
        return INFINITY
    return affine(ctx, ctx.from_json(obj["x"]), ctx.from_json(obj["y"]))


# ---- the curve over F_q ----------------------------------------------------------
def fq_points(ctx: KContext):
    """All affine F_q-points (x, y) as code pairs."""
    F = ctx.F
    m, a = F.mul_t, F.add_t
    a1, a2, a3, a4, a6 = ctx.curve_coeffs()
    for x in range(F.q):
        xx = m[x][x]
        rhs = a[a[a[m[xx][x]][m[a2][xx]]][m[a4][x]]][a6]
        lin = a[m[a1][x]][a3]
        for y in range(F.q):
            if a[m[y][y]][m[lin][y]] == rhs:
                yield x, y


def class_number(ctx: KContext) -> int:
    """#E(F_q), which equals the class number of A = F_q[theta, eta]."""
    return 1 + sum(1 for _ in fq_points(ctx))


def hasse_ok(ctx: KContext, h: int) -> bool:
    return abs(h - ctx.q - 1) <= 2 * math.sqrt(ctx.q)
