"""
Local expansions on E over K
----------------------------
KSeries is a truncated Laurent series with KElem coefficients and absolute
precision tracking. LocalChart holds the coordinate series t(s), y(s) in a
uniformizer s at an affine point: s = t - t(P) in general, s = y - y(P) at
points where 2y + a1*t + a3 vanishes. Both are obtained by Newton iteration
on the Weierstrass relation, doubling the correct terms each step.
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import List, Optional, Sequence, Tuple

from src.curve.kpoly import KPoly
from src.curve.points import Point
from src.errors import DivisionByZero, PrecisionError
from src.fields.function_field import KContext, KElem

logger = logging.getLogger(__name__)


# ---- truncated power-series kernels (lists of KElem, valuation 0) -------------
def _mul_trunc(ctx: KContext, a: Sequence[KElem], b: Sequence[KElem], n: int) -> List[KElem]:
    res = [ctx.zero] * n
    for i, x in enumerate(a[:n]):
        if x.is_zero():
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if not y.is_zero():
                res[i + j] = res[i + j] + x * y
    return res


def _inv_trunc(ctx: KContext, a: Sequence[KElem], n: int) -> List[KElem]:
    if not a or a[0].is_zero():
        raise DivisionByZero("series with zero constant term is not a unit")
    b0 = a[0].inv()
    out = [b0]
    for k in range(1, n):
        acc = ctx.zero
        for j in range(1, min(k, len(a) - 1) + 1):
            if not a[j].is_zero() and not out[k - j].is_zero():
                acc = acc + a[j] * out[k - j]
        out.append(-(b0 * acc))
    return out


def _pad(ctx: KContext, a: Sequence[KElem], n: int) -> List[KElem]:
    a = list(a[:n])
    return a + [ctx.zero] * (n - len(a))


def _horner(ctx: KContext, poly: KPoly, T: Sequence[KElem], n: int) -> List[KElem]:
    acc: List[KElem] = [ctx.zero] * n
    for c in reversed(poly):
        acc = _mul_trunc(ctx, acc, T, n)
        acc[0] = acc[0] + c
    return acc


@dataclass(frozen=True)
class KSeries:
    """s**val * (c_0 + c_1 s + ...), known modulo s**prec."""
    ctx: KContext
    val: int
    coeffs: Tuple[KElem, ...]
    prec: int

    @classmethod
    def make(cls, ctx: KContext, coeffs: Sequence[KElem], val: int, prec: int) -> "KSeries":
        coeffs = list(coeffs[: max(prec - val, 0)])
        k = 0
        while k < len(coeffs) and coeffs[k].is_zero():
            k += 1
        coeffs = coeffs[k:]
        val += k
        if not coeffs:
            return cls(ctx, prec, (), prec)
        return cls(ctx, val, tuple(_pad(ctx, coeffs, prec - val)), prec)

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known."""
        return not self.coeffs

    def coefficient(self, e: int) -> KElem:
        if e >= self.prec:
            raise PrecisionError(f"coefficient s^{e} is beyond precision {self.prec}")
        if e < self.val:
            return self.ctx.zero
        return self.coeffs[e - self.val]

    def leading(self) -> KElem:
        if self.is_zero():
            raise PrecisionError("series is zero to its working precision")
        return self.coeffs[0]

    def __add__(self, other: "KSeries") -> "KSeries":
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val)
        n = prec - val
        if n <= 0:
            return KSeries(self.ctx, prec, (), prec)
        res = [self.ctx.zero] * n
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.val - val + i
                if k < n:
                    res[k] = res[k] + c
        return KSeries.make(self.ctx, res, val, prec)

    def __neg__(self) -> "KSeries":
        return KSeries(self.ctx, self.val, tuple(-c for c in self.coeffs), self.prec)

    def __sub__(self, other: "KSeries") -> "KSeries":
        return self + (-other)

    def __mul__(self, other: "KSeries") -> "KSeries":
        val = self.val + other.val
        if self.is_zero() or other.is_zero():
            # O(s^a) * (s^b + ...) = O(s^(a+b))
            prec = (self.prec if self.is_zero() else self.val) + (other.prec if other.is_zero() else other.val)
            return KSeries(self.ctx, prec, (), prec)
        n = min(len(self.coeffs), len(other.coeffs))
        return KSeries.make(self.ctx, _mul_trunc(self.ctx, self.coeffs, other.coeffs, n), val, val + n)

    def inv(self) -> "KSeries":
        if self.is_zero():
            raise PrecisionError("cannot invert a series that is zero to its working precision")
        n = len(self.coeffs)
        return KSeries.make(self.ctx, _inv_trunc(self.ctx, self.coeffs, n), -self.val, -self.val + n)

    def __truediv__(self, other: "KSeries") -> "KSeries":
        return self * other.inv()

    def __pow__(self, e: int) -> "KSeries":
        base = self if e >= 0 else self.inv()
        e = abs(e)
        result = KSeries.make(self.ctx, [self.ctx.one], 0, len(base.coeffs) or 1)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def to_json(self):
        return {"val": self.val, "coeffs": [c.to_json() for c in self.coeffs], "prec": self.prec}


class LocalChart:
    """
    Coordinate series at an affine point P.

    Attributes:
        kind: "t" when the uniformizer is t - t(P), "y" when it is y - y(P).
        T, Y: lists of N KElem coefficients of t(s) and y(s).
        omega: coefficients of the invariant differential's density in ds.
    """

    def __init__(self, ctx: KContext, P: Point, N: int):
        if N <= 0:
            raise ValueError("local expansion needs at least one term")
        if P.is_infinity:
            raise ValueError("local charts are only built at affine points")
        self.ctx, self.P, self.N = ctx, P, N
        a1, a3 = ctx.const(ctx.a1), ctx.const(ctx.a3)
        ramified = (2 * P.y + a1 * P.x + a3).is_zero()
        self.kind = "y" if ramified else "t"
        if self.kind == "t":
            self.T = _pad(ctx, [P.x, ctx.one], N)
            self.Y = self._newton_y()
        else:
            self.Y = _pad(ctx, [P.y, ctx.one], N)
            self.T = self._newton_t()
        self.omega = self._differential()
        logger.debug("local chart at %s: uniformizer %s, %d terms", P, self.kind, N)

    def _curve_polys(self) -> Tuple[KPoly, KPoly]:
        ctx = self.ctx
        L = tuple(ctx.const(c) for c in (ctx.a3, ctx.a1))
        Pc = tuple(ctx.const(c) for c in (ctx.a6, ctx.a4, ctx.a2, 1))
        return L, Pc

    def _newton_y(self) -> List[KElem]:
        ctx, N = self.ctx, self.N
        L, Pc = self._curve_polys()
        Lt = _horner(ctx, L, self.T, N)
        Pt = _horner(ctx, Pc, self.T, N)
        Y = _pad(ctx, [self.P.y], N)
        prec = 1
        while prec < N:
            prec = min(2 * prec, N)
            G = [a + b - c for a, b, c in zip(_mul_trunc(ctx, Y, Y, prec), _mul_trunc(ctx, Lt, Y, prec), Pt[:prec])]
            dG = [2 * a + b for a, b in zip(Y[:prec], Lt[:prec])]
            step = _mul_trunc(ctx, G, _inv_trunc(ctx, dG, prec), prec)
            Y = [a - b for a, b in zip(Y[:prec], step)] + Y[prec:]
        return Y

    def _newton_t(self) -> List[KElem]:
        ctx, N = self.ctx, self.N
        a1, a2, a3, a4 = (ctx.const(c) for c in (ctx.a1, ctx.a2, ctx.a3, ctx.a4))
        L, Pc = self._curve_polys()
        dP = (a4, 2 * a2, ctx.from_int(3))
        T = _pad(ctx, [self.P.x], N)
        prec = 1
        while prec < N:
            prec = min(2 * prec, N)
            Yp = self.Y[:prec]
            H = [a + b - c for a, b, c in zip(_mul_trunc(ctx, Yp, Yp, prec),
                                               _mul_trunc(ctx, _horner(ctx, L, T, prec), Yp, prec),
                                               _horner(ctx, Pc, T, prec))]
            dH = [a1 * y - d for y, d in zip(Yp, _horner(ctx, dP, T, prec))]
            step = _mul_trunc(ctx, H, _inv_trunc(ctx, dH, prec), prec)
            T = [a - b for a, b in zip(T[:prec], step)] + T[prec:]
        return T

    def _differential(self) -> List[KElem]:
        ctx, N = self.ctx, self.N
        a1, a2, a3, a4 = (ctx.const(c) for c in (ctx.a1, ctx.a2, ctx.a3, ctx.a4))
        if self.kind == "t":
            den = [2 * y + a1 * t for y, t in zip(self.Y, self.T)]
            den[0] = den[0] + a3
        else:
            dP = (a4, 2 * a2, ctx.from_int(3))
            den = [d - a1 * y for d, y in zip(_horner(ctx, dP, self.T, N), self.Y)]
        return _inv_trunc(ctx, den, N)

    def expand_poly(self, poly: KPoly) -> KSeries:
        return KSeries.make(self.ctx, _horner(self.ctx, poly, self.T, self.N), 0, self.N)

    def y_series(self) -> KSeries:
        return KSeries.make(self.ctx, self.Y, 0, self.N)

    def omega_series(self) -> KSeries:
        return KSeries.make(self.ctx, self.omega, 0, self.N)


@dataclass(frozen=True)
class LocalExpansion:
    point: Point
    uniformizer: str
    series: KSeries
    precision: int

    @property
    def order(self) -> Optional[int]:
        return None if self.series.is_zero() else self.series.val

    def to_json(self):
        return {"point": self.point.to_json(), "uniformizer": self.uniformizer,
                "series": self.series.to_json(), "precision": self.precision}
