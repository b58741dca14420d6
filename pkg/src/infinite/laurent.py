"""
The infinite place
------------------
K embeds into F_q((u)) with u = t/y, a uniformizer at infinity (deg t = 2,
deg y = 3, so val u = 1). With w = 1/y the Weierstrass relation becomes

    w + c1*u*w + c3*w^2 = u^3 + c2*u^2*w + c4*u*w^2 + c6*w^3,

which Newton iteration solves for w = u^3 + O(u^4); then eta = 1/w and
theta = u/w. Every LaurentK carries an absolute precision: coefficients are
known modulo u^prec, and arithmetic propagates it pessimistically.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from functools import lru_cache
import logging
from typing import Any, Dict, Optional, Sequence

from src.config import DEFAULT_PRECISION
from src.curve.curve_function import CurveFunc
from src.curve.points import Point, xi
from src.errors import DivisionByZero, PrecisionError
from src.fields.finite_field import FiniteField
from src.fields.function_field import KContext, KElem
from src.fields.poly_ring import Poly, PolyRing, trim

logger = logging.getLogger(__name__)

# precision of exact values (constants of F_q)
EXACT = 1 << 60


@dataclass(frozen=True)
class LaurentK:
    """u**val * (c_0 + c_1 u + ...), c_0 != 0 unless zero, known modulo u**prec."""
    R: PolyRing = field(compare=False, repr=False, hash=False)
    val: int
    coeffs: Poly
    prec: int

    @classmethod
    def make(cls, R: PolyRing, coeffs: Sequence[int], val: int, prec: int) -> "LaurentK":
        coeffs = list(coeffs[: max(prec - val, 0)])
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        coeffs = trim(coeffs[k:])
        if not coeffs:
            return cls(R, prec, (), prec)
        return cls(R, val + k, coeffs, prec)

    @classmethod
    def constant(cls, R: PolyRing, c: int) -> "LaurentK":
        return cls.make(R, [c], 0, EXACT)

    @property
    def fq(self) -> FiniteField:
        return self.R.F

    @property
    def relative_precision(self) -> int:
        return self.prec - self.val

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known."""
        return not self.coeffs

    def is_exact(self) -> bool:
        return self.prec >= EXACT // 2

    def coefficient(self, e: int) -> int:
        if e >= self.prec:
            raise PrecisionError(f"coefficient u^{e} is beyond precision {self.prec}")
        k = e - self.val
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def truncate(self, rel: int) -> "LaurentK":
        if self.is_zero() or self.relative_precision <= rel:
            return self
        return LaurentK.make(self.R, self.coeffs, self.val, self.val + rel)

    # ---- arithmetic ------------------------------------------------------------
    def __add__(self, other: "LaurentK") -> "LaurentK":
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return LaurentK.make(self.R, other.coeffs, other.val, prec)
        if other.is_zero():
            return LaurentK.make(self.R, self.coeffs, self.val, prec)
        val = min(self.val, other.val)
        n = prec - val
        if n <= 0:
            return LaurentK(self.R, prec, (), prec)
        R = self.R
        a = R.shift(self.coeffs[: max(n - (self.val - val), 0)], self.val - val)
        b = R.shift(other.coeffs[: max(n - (other.val - val), 0)], other.val - val)
        return LaurentK.make(R, R.add(a, b), val, prec)

    def __neg__(self) -> "LaurentK":
        return LaurentK(self.R, self.val, self.R.neg(self.coeffs), self.prec)

    def __sub__(self, other: "LaurentK") -> "LaurentK":
        return self + (-other)

    def __mul__(self, other: "LaurentK") -> "LaurentK":
        if self.is_zero() or other.is_zero():
            prec = (self.prec if self.is_zero() else self.val) + (other.prec if other.is_zero() else other.val)
            return LaurentK(self.R, prec, (), prec)
        val = self.val + other.val
        rel = min(self.relative_precision, other.relative_precision)
        if rel >= EXACT // 2:
            return LaurentK.make(self.R, self.R.mul(self.coeffs, other.coeffs), val, EXACT)
        prod = self.R.mul(self.coeffs[:rel], other.coeffs[:rel])
        return LaurentK.make(self.R, prod, val, val + rel)

    def inv(self) -> "LaurentK":
        if self.is_zero():
            raise DivisionByZero("inverse of a Laurent series that is zero to its precision")
        rel = self.relative_precision
        if rel >= EXACT // 2:
            if len(self.coeffs) == 1:
                return LaurentK.make(self.R, [self.fq.inv(self.coeffs[0])], -self.val, EXACT)
            raise PrecisionError("exact inverse of a non-monomial needs a finite precision")
        return LaurentK.make(self.R, _inv_series(self.R, self.coeffs, rel), -self.val, -self.val + rel)

    def __truediv__(self, other: "LaurentK") -> "LaurentK":
        return self * other.inv()

    def __pow__(self, e: int) -> "LaurentK":
        base = self if e >= 0 else self.inv()
        e = abs(e)
        result = LaurentK.constant(self.R, 1)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self, k: int = 1, rel: Optional[int] = None) -> "LaurentK":
        """x -> x^(q^k); F_q coefficients are fixed, so this is u -> u^(q^k).

        With rel given, only the first rel coefficients of the image are kept.
        """
        if k == 0 or self.is_zero() and self.is_exact():
            return self if rel is None else self.truncate(rel)
        Q = self.fq.q ** k
        prec = self.prec if self.is_exact() else self.prec * Q
        if self.is_zero():
            return LaurentK(self.R, prec, (), prec)
        coeffs = self.coeffs
        if rel is not None and self.val * Q + rel < prec:
            prec = self.val * Q + rel
            coeffs = coeffs[: -(-rel // Q)]
        return LaurentK(self.R, self.val * Q, self.R.spread(coeffs, Q), prec)

    def to_json(self) -> Dict[str, Any]:
        F = self.fq
        return {"val": self.val, "coeffs": [F.to_digits(c) for c in self.coeffs],
                "prec": None if self.is_exact() else self.prec}


def _inv_series(R: PolyRing, a: Poly, n: int) -> Poly:
    """Inverse of a unit power series modulo u^n by Newton doubling."""
    F = R.F
    b: Poly = (F.inv(a[0]),)
    k = 1
    while k < n:
        k = min(2 * k, n)
        ab = R.mul(a[:k], b)[:k]
        err = R.neg(trim(ab[1:]))
        corr = R.mul(b, err)[: k - 1]
        b = R.add(b, R.shift(trim(corr), 1))[:k]
    return b


# ---- the chart at infinity -----------------------------------------------------
class InfiniteChart:
    """theta and eta as Laurent series in u, each with relative precision N."""

    def __init__(self, ctx: KContext, N: int):
        if N < 1:
            raise ValueError("precision must be >= 1")
        self.ctx, self.N = ctx, N
        self.R = ctx.R
        M = N + 4
        self.w = self._newton_w(M)
        w = LaurentK.make(self.R, self.w, 0, M)
        u = LaurentK.make(self.R, [0, 1], 0, EXACT)
        self.eta = w.inv().truncate(N)
        self.theta = (u / w).truncate(N)
        logger.debug("chart at infinity ready with %d terms", N)

    def _newton_w(self, M: int) -> Poly:
        R, ctx = self.R, self.ctx
        F = R.F
        a1, a2, a3, a4, a6 = ctx.curve_coeffs()
        u = (0, 1)

        def mul(a, b, k):
            return R.mul(a, b)[:k]

        w: Poly = R.shift((1,), 3)
        k = 4
        while k < M:
            k = min(2 * k, M)
            w2 = mul(w, w, k)
            w3 = mul(w2, w, k)
            uw = mul(u, w, k)
            G = R.add(w, R.scale(a1, uw))
            G = R.add(G, R.scale(a3, w2))
            G = R.sub(G, R.shift((1,), 3))
            G = R.sub(G, R.scale(a2, mul(R.shift((1,), 2), w, k)))
            G = R.sub(G, R.scale(a4, mul(u, w2, k)))
            G = R.sub(G, R.scale(a6, w3))
            dG = R.add((1,), R.scale(a1, u))
            dG = R.add(dG, R.scale(F.add(a3, a3), w))
            dG = R.sub(dG, R.scale(a2, R.shift((1,), 2)))
            dG = R.sub(dG, R.scale(F.add(a4, a4), uw))
            dG = R.sub(dG, R.scale(F.mul(F.from_int(3), a6), w2))
            step = mul(trim(G[:k]), _inv_series(R, trim(dG[:k]) or (1,), k), k)
            w = trim(R.sub(w, step)[:k])
        return w

    def residual(self) -> LaurentK:
        """Weierstrass relation evaluated at (theta(u), eta(u))."""
        ctx = self.ctx
        c = lambda v: LaurentK.constant(self.R, v)
        t, y = self.theta, self.eta
        a1, a2, a3, a4, a6 = ctx.curve_coeffs()
        lhs = y * y + c(a1) * t * y + c(a3) * y
        rhs = t * t * t + c(a2) * t * t + c(a4) * t + c(a6)
        return lhs - rhs


@lru_cache(maxsize=None)
def infinite_chart(ctx: KContext, N: int) -> InfiniteChart:
    return InfiniteChart(ctx, N)


def _embed_poly(chart: InfiniteChart, a: Poly) -> LaurentK:
    R = chart.R
    acc = LaurentK(R, EXACT, (), EXACT)
    for c in reversed(a):
        acc = acc * chart.theta
        if c:
            acc = acc + LaurentK.constant(R, c)
    return acc


@lru_cache(maxsize=4096)
def _embed_cached(ctx: KContext, x: KElem, N: int) -> LaurentK:
    chart = infinite_chart(ctx, N)
    num = _embed_poly(chart, x.U)
    if x.V:
        num = num + _embed_poly(chart, x.V) * chart.eta
    if x.D == (1,):
        return num
    return num / _embed_poly(chart, x.D)


def embed_K(ctx: KContext, x: KElem, N: int = DEFAULT_PRECISION) -> LaurentK:
    if N < 1:
        raise ValueError("precision must be >= 1")
    if x.is_zero():
        return LaurentK(ctx.R, EXACT, (), EXACT)
    return _embed_cached(ctx, x, N)


def laurent_arith(op: str, a: LaurentK, b: LaurentK) -> LaurentK:
    ops = {"add": lambda: a + b, "sub": lambda: a - b, "mul": lambda: a * b, "div": lambda: a / b}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op]()


def laurent_frobenius(a: LaurentK, k: int) -> LaurentK:
    return a.frobenius(k)


def embed_twisted_eval(F: CurveFunc, j: int, N: int = DEFAULT_PRECISION, P: Optional[Point] = None) -> LaurentK:
    """F^(j)(P) in K_inf; coefficients are embedded, then twisted, so F^(j) is never formed in K."""
    ring = F.ring
    ctx = ring.ctx
    P = P if P is not None else xi(ctx)
    t, y = embed_K(ctx, P.x, N), embed_K(ctx, P.y, N)

    def poly(a) -> LaurentK:
        acc = LaurentK(ctx.R, EXACT, (), EXACT)
        for c in reversed(a):
            acc = acc * t
            if not c.is_zero():
                acc = acc + embed_K(ctx, c, N).frobenius(j, rel=N)
        return acc

    num = poly(F.numU)
    if F.numV:
        num = num + poly(F.numV) * y
    den = poly(F.den)
    if den.is_zero():
        raise PrecisionError(f"denominator vanishes to precision {den.prec}; increase the precision")
    return num / den
