"""
Functions on E with coefficients in K
-------------------------------------
CurveFunc = (numU(t) + numV(t)*y)/den(t) with numU, numV, den in K[t], den monic
and gcd(numU, numV, den) = 1. Denominators are kept y-free by multiplying with
the conjugate under y -> -y - a1*t - a3, so the representation is unique.

Degrees at infinity use the grading deg t = 2, deg y = 3 with K coefficients
carrying no weight; sgn is the leading K coefficient in the basis {t^i, t^j*y}.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import logging
import random
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.config import LOCAL_EXPANSION_TERMS
from src.curve.kpoly import KPoly, KPolyRing
from src.curve.local_expansion import KSeries, LocalChart, LocalExpansion
from src.curve.points import Point, point_add, tangent_slope
from src.errors import CurveError, DegreeOfZero, DivisionByZero, PoleError, PrecisionError
from src.fields.function_field import KContext, KElem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveFunc:
    numU: KPoly
    numV: KPoly
    den: KPoly
    ring: "CurveRing" = field(compare=False, repr=False, hash=False)

    def is_zero(self) -> bool:
        return not self.numU and not self.numV

    def is_one(self) -> bool:
        return self == self.ring.one

    def _coerce(self, other):
        if isinstance(other, CurveFunc):
            return other
        if isinstance(other, KElem):
            return self.ring.const(other)
        if isinstance(other, int):
            return self.ring.const(self.ring.ctx.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ring.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ring.sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ring.sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ring.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ring.div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ring.div(other, self)

    def __neg__(self):
        return self.ring.neg(self)

    def __pow__(self, e: int):
        return self.ring.pow(self, e)

    def twist(self, k: int = 1) -> "CurveFunc":
        return self.ring.twist(self, k)

    def deg(self) -> int:
        return self.ring.deg_sgn(self)[0]

    def sgn(self) -> KElem:
        return self.ring.deg_sgn(self)[1]

    def to_json(self) -> Dict[str, Any]:
        return {"numU": [c.to_json() for c in self.numU],
                "numV": [c.to_json() for c in self.numV],
                "den": [c.to_json() for c in self.den]}

    def __str__(self) -> str:
        return self.ring.format(self)


class CurveRing:
    """
    K(t, y) for the curve carried by a KContext.

    Local charts are memoized per (point, terms); like the Frobenius cache of
    KContext this is the only mutable state and it never changes results.
    """

    def __init__(self, ctx: KContext):
        self.ctx = ctx
        self.kp = KPolyRing(ctx)
        self.L: KPoly = self.kp.from_fq((ctx.a3, ctx.a1))
        self.P: KPoly = self.kp.from_fq((ctx.a6, ctx.a4, ctx.a2, 1))
        self.zero = CurveFunc((), (), self.kp.one, self)
        self.one = CurveFunc(self.kp.one, (), self.kp.one, self)
        self.t = CurveFunc((ctx.zero, ctx.one), (), self.kp.one, self)
        self.y = CurveFunc((), self.kp.one, self.kp.one, self)
        self._charts: Dict[Tuple[Point, int], LocalChart] = {}

    # ---- construction ----------------------------------------------------------
    def make(self, U: KPoly, V: KPoly = (), D: Optional[KPoly] = None) -> CurveFunc:
        kp = self.kp
        D = kp.one if D is None else D
        if not D:
            raise DivisionByZero("zero denominator in K(t, y)")
        if not U and not V:
            return self.zero
        if len(D) > 1:
            g = kp.gcd(D, U) if U else kp.monic(D)
            if len(g) > 1 and V:
                g = kp.gcd(g, V)
            if len(g) > 1:
                U = kp.div_exact(U, g) if U else ()
                V = kp.div_exact(V, g) if V else ()
                D = kp.div_exact(D, g)
        if not D[-1].is_one():
            inv = D[-1].inv()
            U, V, D = kp.scale(inv, U), kp.scale(inv, V), kp.scale(inv, D)
        return CurveFunc(U, V, D, self)

    def const(self, c: KElem) -> CurveFunc:
        return self.make(self.kp.const(c))

    def t_minus(self, x: KElem) -> CurveFunc:
        return self.make((-x, self.ctx.one))

    def from_a_elem(self, a: KElem) -> CurveFunc:
        """The bar map theta -> t, eta -> y on A-elements."""
        if not a.is_integral():
            raise ValueError("the bar map is only defined on A = F_q[theta, eta]")
        return self.make(self.kp.from_fq(a.U), self.kp.from_fq(a.V))

    def random_func(self, rng: random.Random, max_deg: int = 2, coeff_deg: int = 1,
                    integral: bool = False) -> CurveFunc:
        """Nonzero (U + V*y)/D with coefficients from KContext.random_elem; D = 1 when integral."""
        ctx, kp = self.ctx, self.kp

        def poly(n: int) -> KPoly:
            return kp.trim([ctx.random_elem(rng, max_deg=coeff_deg) for _ in range(n)])

        while True:
            U, V = poly(rng.randint(0, max_deg + 1)), poly(rng.randint(0, max_deg))
            D = kp.one if integral else kp.trim(list(poly(rng.randint(0, max_deg))) + [ctx.one])
            if U or V:
                return self.make(U, V, D)

    # ---- arithmetic ------------------------------------------------------------
    def add(self, F: CurveFunc, G: CurveFunc) -> CurveFunc:
        kp = self.kp
        if G.is_zero():
            return F
        if F.is_zero():
            return G
        if F.den == G.den:
            return self.make(kp.add(F.numU, G.numU), kp.add(F.numV, G.numV), F.den)
        g = kp.gcd(F.den, G.den)
        fd = kp.div_exact(F.den, g) if len(g) > 1 else F.den
        gd = kp.div_exact(G.den, g) if len(g) > 1 else G.den
        U = kp.add(kp.mul(F.numU, gd), kp.mul(G.numU, fd))
        V = kp.add(kp.mul(F.numV, gd), kp.mul(G.numV, fd))
        return self.make(U, V, kp.mul(F.den, gd))

    def neg(self, F: CurveFunc) -> CurveFunc:
        return CurveFunc(self.kp.neg(F.numU), self.kp.neg(F.numV), F.den, self)

    def sub(self, F: CurveFunc, G: CurveFunc) -> CurveFunc:
        return self.add(F, self.neg(G))

    def _mul_num(self, U1: KPoly, V1: KPoly, U2: KPoly, V2: KPoly) -> Tuple[KPoly, KPoly]:
        kp = self.kp
        U = kp.mul(U1, U2)
        V = kp.add(kp.mul(U1, V2), kp.mul(V1, U2))
        if V1 and V2:
            vv = kp.mul(V1, V2)
            U = kp.add(U, kp.mul(vv, self.P))
            V = kp.sub(V, kp.mul(vv, self.L))
        return U, V

    def mul(self, F: CurveFunc, G: CurveFunc) -> CurveFunc:
        if F.is_zero() or G.is_zero():
            return self.zero
        if F.is_one():
            return G
        if G.is_one():
            return F
        U, V = self._mul_num(F.numU, F.numV, G.numU, G.numV)
        return self.make(U, V, self.kp.mul(F.den, G.den))

    def norm(self, U: KPoly, V: KPoly) -> KPoly:
        """(U + V*y)(U + V*ybar) = U^2 - U*V*L - V^2*P."""
        kp = self.kp
        n = kp.mul(U, U)
        if V:
            n = kp.sub(n, kp.mul(kp.mul(U, V), self.L))
            n = kp.sub(n, kp.mul(kp.mul(V, V), self.P))
        return n

    def inv(self, F: CurveFunc) -> CurveFunc:
        if F.is_zero():
            raise DivisionByZero("division by zero in K(t, y)")
        kp = self.kp
        if not F.numV:
            return self.make(F.den, (), F.numU)
        conjU = kp.sub(F.numU, kp.mul(F.numV, self.L))
        conjV = kp.neg(F.numV)
        return self.make(kp.mul(F.den, conjU), kp.mul(F.den, conjV), self.norm(F.numU, F.numV))

    def div(self, F: CurveFunc, G: CurveFunc) -> CurveFunc:
        return self.mul(F, self.inv(G))

    def pow(self, F: CurveFunc, e: int) -> CurveFunc:
        if e < 0:
            F, e = self.inv(F), -e
        result, base = self.one, F
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def twist(self, F: CurveFunc, k: int) -> CurveFunc:
        if k < 0:
            raise ValueError("negative twists are not supported")
        if k == 0:
            return F
        kp = self.kp
        # Frobenius on K is an injective field map, so canonical form survives.
        return CurveFunc(kp.twist(F.numU, k), kp.twist(F.numV, k), kp.twist(F.den, k), self)

    def compose_negation(self, F: CurveFunc) -> CurveFunc:
        """F o [-1], i.e. y -> -y - a1*t - a3."""
        kp = self.kp
        return self.make(kp.sub(F.numU, kp.mul(F.numV, self.L)), kp.neg(F.numV), F.den)

    # ---- behaviour at infinity -------------------------------------------------
    def deg_sgn(self, F: CurveFunc) -> Tuple[int, KElem]:
        if F.is_zero():
            raise DegreeOfZero("degree of the zero function is undefined")
        du = 2 * (len(F.numU) - 1) if F.numU else None
        dv = 2 * (len(F.numV) - 1) + 3 if F.numV else None
        dd = 2 * (len(F.den) - 1)
        if dv is None or (du is not None and du > dv):
            return du - dd, F.numU[-1]
        return dv - dd, F.numV[-1]

    def normalize(self, F: CurveFunc) -> CurveFunc:
        """Scale F so that its sign is 1."""
        s = self.deg_sgn(F)[1]
        return F if s.is_one() else self.mul(F, self.const(s.inv()))

    # ---- local behaviour -------------------------------------------------------
    def chart(self, P: Point, N: int) -> LocalChart:
        key = (P, N)
        ch = self._charts.get(key)
        if ch is None:
            ch = LocalChart(self.ctx, P, N)
            self._charts[key] = ch
        return ch

    def _terms_for(self, F: CurveFunc, N: Optional[int]) -> int:
        bound_num = max(2 * len(F.numU) - 2 if F.numU else 0, 2 * len(F.numV) + 1 if F.numV else 0)
        bound_den = 2 * (len(F.den) - 1)
        return max(N or LOCAL_EXPANSION_TERMS, bound_num + 2 * bound_den + 2)

    def local_expand(self, F: CurveFunc, P: Point, N: Optional[int] = None) -> LocalExpansion:
        if N is not None and N <= 0:
            raise ValueError("number of terms must be positive")
        terms = self._terms_for(F, N)
        ch = self.chart(P, terms)
        num = ch.expand_poly(F.numU)
        if F.numV:
            num = num + ch.expand_poly(F.numV) * ch.y_series()
        series = num / ch.expand_poly(F.den)
        if series.is_zero() and not F.is_zero():
            raise PrecisionError(f"expansion of a nonzero function vanished to {terms} terms")
        return LocalExpansion(P, ch.kind, series, terms)

    def order_at(self, F: CurveFunc, P: Point) -> int:
        if F.is_zero():
            raise DegreeOfZero("order of the zero function is undefined")
        return self.local_expand(F, P).series.val

    def residue(self, F: CurveFunc, P: Point, N: Optional[int] = None) -> KElem:
        """Residue of F*lambda at P, lambda the invariant differential."""
        terms = self._terms_for(F, N)
        for attempt in range(2):
            exp = self.local_expand(F, P, terms)
            ch = self.chart(P, exp.precision)
            try:
                return (exp.series * ch.omega_series()).coefficient(-1)
            except PrecisionError:
                if attempt:
                    raise
                logger.info("residue at %s needs more precision; retrying with %d terms", P, 2 * terms)
                terms *= 2
        raise PrecisionError("residue could not be certified")

    def _series(self, F: CurveFunc, P: Point, N: int) -> KSeries:
        """Expansion with exactly N chart terms; PrecisionError when N does not separate F from 0."""
        ch = self.chart(P, N)
        num = ch.expand_poly(F.numU)
        if F.numV:
            num = num + ch.expand_poly(F.numV) * ch.y_series()
        den = ch.expand_poly(F.den)
        if num.is_zero() or den.is_zero():
            raise PrecisionError(f"{N} terms do not separate the function from zero at {P}")
        return num / den

    def _product_series(self, factors: Sequence[Tuple[CurveFunc, int]], P: Point, N: int) -> KSeries:
        out = KSeries.make(self.ctx, [self.ctx.one], 0, N)
        for F, e in factors:
            if e:
                out = out * (self._series(F, P, N) ** e)
        return out

    def _adaptive(self, factors: Sequence[Tuple[CurveFunc, int]], P: Point, read, start: int):
        """Double the chart size from start until read(series, N) stops raising PrecisionError."""
        cap = sum(abs(e) * self._terms_for(F, None) for F, e in factors) + 2
        N = max(start, 2)
        while True:
            try:
                return read(self._product_series(factors, P, N), N)
            except PrecisionError:
                if N >= cap:
                    raise
                N = min(2 * N, cap)
                logger.debug("product at %s needs more precision; %d terms", P, N)

    def residue_product(self, factors: Sequence[Tuple[CurveFunc, int]], P: Point, start: int = 8) -> KElem:
        """Residue of (prod F**e)*lambda at P without forming the product in K(t, y)."""
        return self._adaptive(factors, P,
                              lambda s, N: (s * self.chart(P, N).omega_series()).coefficient(-1), start)

    def _num_value(self, F: CurveFunc, P: Point) -> KElem:
        kp = self.kp
        v = kp.eval(F.numU, P.x)
        if F.numV:
            v = v + kp.eval(F.numV, P.x) * P.y
        return v

    def eval(self, F: CurveFunc, P: Point) -> KElem:
        if P.is_infinity:
            raise ValueError("evaluation at infinity is not supported; use deg_sgn")
        d = self.kp.eval(F.den, P.x)
        if not d.is_zero():
            return self._num_value(F, P) / d
        series = self.local_expand(F, P).series
        if series.val < 0:
            raise PoleError(series.val, f"function has a pole of order {-series.val} at {P}")
        return series.coefficient(0)

    def eval_product(self, factors: Sequence[Tuple[CurveFunc, int]], P: Point) -> KElem:
        """Value at P of prod F**e, finite even when single factors vanish or blow up."""
        values: List[KElem] = []
        direct = True
        for F, e in factors:
            d = self.kp.eval(F.den, P.x)
            if d.is_zero():
                direct = False
                break
            v = self._num_value(F, P) / d
            if v.is_zero() and e != 0:
                direct = False
                break
            values.append(v ** e)
        if direct:
            out = self.ctx.one
            for v in values:
                out = out * v
            return out

        def read(series: KSeries, N: int) -> KElem:
            if series.val < 0:
                raise PoleError(series.val, f"product has a pole of order {-series.val} at {P}")
            return series.coefficient(0)
        return self._adaptive(factors, P, read, LOCAL_EXPANSION_TERMS)

    # ---- divisor constructors --------------------------------------------------
    def vertical(self, P: Point) -> CurveFunc:
        if P.is_infinity:
            return self.one
        return self.t_minus(P.x)

    def line_through(self, P: Point, Q: Point) -> CurveFunc:
        """Sign-normalized chord (tangent when P = Q) with divisor (P)+(Q)+(-(P+Q)) - 3(inf)."""
        if P.is_infinity or Q.is_infinity:
            raise CurveError("line_through needs affine points")
        ctx = self.ctx
        S = point_add(ctx, P, Q)
        if S.is_infinity:
            return self.vertical(P)
        if P.x == Q.x:
            num, den = tangent_slope(ctx, P)
            lam = num / den
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        return self.make((lam * P.x - P.y, -lam), self.kp.one)

    def miller(self, n: int, P: Point) -> CurveFunc:
        """Function with divisor n(P) - ([n]P) - (n-1)(inf), built by double-and-add."""
        if n < 1:
            raise ValueError("miller needs n >= 1")
        ctx = self.ctx
        f, R = self.one, P
        for bit in bin(n)[3:]:
            R2 = point_add(ctx, R, R, check=False)
            f = f * f * self.line_through(R, R) / self.vertical(R2)
            R = R2
            if bit == "1":
                R1 = point_add(ctx, R, P, check=False)
                f = f * self.line_through(R, P) / self.vertical(R1)
                R = R1
        return self.normalize(f)

    # ---- serialization ---------------------------------------------------------
    def from_json(self, obj: Dict[str, Any]) -> CurveFunc:
        ctx, kp = self.ctx, self.kp
        def poly(key: str) -> Optional[KPoly]:
            return kp.trim([ctx.from_json(c) for c in obj[key]]) if key in obj else None
        return self.make(poly("numU") or (), poly("numV") or (), poly("den"))

    def format(self, F: CurveFunc) -> str:
        if F.is_zero():
            return "0"

        def poly_str(a: KPoly, suffix: str) -> List[str]:
            out = []
            for i in range(len(a) - 1, -1, -1):
                c = a[i]
                if c.is_zero():
                    continue
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                mono = "*".join(m for m in (mono, suffix) if m)
                cs = str(c)
                if not mono:
                    out.append(cs)
                elif c.is_one():
                    out.append(mono)
                else:
                    out.append(f"({cs})*{mono}")
            return out

        num = " + ".join(poly_str(F.numV, "y") + poly_str(F.numU, ""))
        if F.den == self.kp.one:
            return num
        return f"({num})/({' + '.join(poly_str(F.den, ''))})"


# ---- module-level operations ---------------------------------------------------
def cf_arith(ring: CurveRing, op: str, F: CurveFunc, G: CurveFunc) -> CurveFunc:
    ops = {"add": ring.add, "sub": ring.sub, "mul": ring.mul, "div": ring.div}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](F, G)


def cf_twist(ring: CurveRing, F: CurveFunc, k: int) -> CurveFunc:
    return ring.twist(F, k)


def cf_eval(ring: CurveRing, F: CurveFunc, P: Point) -> KElem:
    return ring.eval(F, P)


def cf_deg_sgn(F: CurveFunc) -> Tuple[int, KElem]:
    return F.ring.deg_sgn(F)


def cf_order_at(ring: CurveRing, F: CurveFunc, P: Point) -> int:
    return ring.order_at(F, P)


def cf_local_expand(ring: CurveRing, F: CurveFunc, P: Point, N: Optional[int] = None) -> LocalExpansion:
    return ring.local_expand(F, P, N)


def cf_residue(ring: CurveRing, F: CurveFunc, P: Point) -> KElem:
    return ring.residue(F, P)


def cf_from_a_elem(ring: CurveRing, a: KElem) -> CurveFunc:
    return ring.from_a_elem(a)


def eval_product(ring: CurveRing, factors: Sequence[Tuple[CurveFunc, int]], P: Point) -> KElem:
    return ring.eval_product(factors, P)


def line_through(ring: CurveRing, P: Point, Q: Point) -> CurveFunc:
    return ring.line_through(P, Q)


def vertical(ring: CurveRing, P: Point) -> CurveFunc:
    return ring.vertical(P)


def miller(ring: CurveRing, n: int, P: Point) -> CurveFunc:
    return ring.miller(n, P)
