"""
Function field K = F_q(theta)(eta)
----------------------------------
KContext carries the Weierstrass data y^2 + c1*t*y + c3*y = t^3 + c2*t^2 + c4*t + c6
and performs exact arithmetic on KElem = (U + V*eta)/D with U, V, D in F_q[theta],
D monic and gcd(U, V, D) = 1, so equality is syntactic.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import logging
import random
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.errors import DegreeOfZero, DivisionByZero, NotAPower, SingularCurve
from src.fields.finite_field import FiniteField
from src.fields.poly_ring import Poly, PolyRing, trim

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThetaRat:
    """An element of F_q(theta) as a reduced fraction with monic denominator."""
    num: Poly
    den: Poly

    def to_json(self, F: FiniteField) -> Dict[str, Any]:
        return {"num": [F.to_digits(c) for c in self.num], "den": [F.to_digits(c) for c in self.den]}


@dataclass(frozen=True)
class KElem:
    U: Poly
    V: Poly
    D: Poly
    ctx: "KContext" = field(compare=False, repr=False, hash=False)

    # ---- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.U and not self.V

    def is_one(self) -> bool:
        return self.U == (1,) and not self.V and self.D == (1,)

    def is_integral(self) -> bool:
        return self.D == (1,)

    # ---- operators -----------------------------------------------------------
    def _coerce(self, other) -> "KElem":
        if isinstance(other, KElem):
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else self.ctx.div(other, self)

    def __neg__(self):
        return self.ctx.neg(self)

    def __pow__(self, e: int):
        return self.ctx.pow(self, e)

    # ---- convenience wrappers ------------------------------------------------
    def inv(self) -> "KElem":
        return self.ctx.inv(self)

    def twist(self, k: int = 1) -> "KElem":
        return self.ctx.frobenius(self, k)

    def deg(self) -> int:
        return self.ctx.deg_sgn(self)[0]

    def sgn(self) -> int:
        return self.ctx.deg_sgn(self)[1]

    def theta_part(self) -> ThetaRat:
        if self.V:
            raise ValueError("element involves eta")
        return ThetaRat(self.U, self.D)

    def to_json(self) -> Dict[str, Any]:
        F = self.ctx.F
        return {k: [F.to_digits(c) for c in getattr(self, k)] for k in ("U", "V", "D")}

    def __str__(self) -> str:
        return self.ctx.format(self)


class KContext:
    """
    Arithmetic context for K over a fixed nonsingular Weierstrass curve.

    Attributes:
        F: the constant field F_q; R: the polynomial ring F_q[theta].
        a1, a2, a3, a4, a6: curve coefficients as F_q codes (c1, c2, c3, c4, c6).
        eta_q: (R, S) with eta**q = R(theta) + S(theta)*eta.
    """

    def __init__(self, fq: FiniteField, coeffs: Sequence[int]):
        if len(coeffs) != 5:
            raise ValueError("expected a1, a2, a3, a4, a6")
        self.F = fq
        self.R = PolyRing(fq)
        self.a1, self.a2, self.a3, self.a4, self.a6 = (int(c) for c in coeffs)
        self.q = fq.q
        # eta^2 = P(theta) - L(theta)*eta
        self.L_poly: Poly = self._trim((self.a3, self.a1))
        self.P_poly: Poly = self._trim((self.a6, self.a4, self.a2, 1))
        if self.discriminant() == 0:
            raise SingularCurve("Weierstrass equation has zero discriminant")
        self._frob_cache: Dict[Tuple[Poly, Poly, Poly], "KElem"] = {}
        self.zero = KElem((), (), (1,), self)
        self.one = KElem((1,), (), (1,), self)
        self.theta = KElem((0, 1), (), (1,), self)
        self.eta = KElem((), (1,), (1,), self)
        eq = self.pow(self.eta, self.q)
        self.eta_q: Tuple[Poly, Poly] = (eq.U, eq.V)
        if not eq.V:
            raise SingularCurve("eta^q has no eta component; the curve is inseparable over F_q(theta)")
        logger.debug("KContext ready: q=%d, coefficients=%s", self.q, coeffs)

    @staticmethod
    def _trim(seq: Sequence[int]) -> Poly:
        return trim(list(seq))

    # ---- curve invariants ------------------------------------------------------
    def discriminant(self) -> int:
        F = self.F
        m, a, s, c = F.mul, F.add, F.sub, F.from_int
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a(m(a1, a1), m(c(4), a2))
        b4 = a(m(c(2), a4), m(a1, a3))
        b6 = a(m(a3, a3), m(c(4), a6))
        b8 = s(a(a(m(m(a1, a1), a6), m(m(c(4), a2), a6)), m(m(a2, a3), a3)),
               a(m(m(a1, a3), a4), m(a4, a4)))
        d = F.neg(m(m(b2, b2), b8))
        d = s(d, m(c(8), m(m(b4, b4), b4)))
        d = s(d, m(c(27), m(b6, b6)))
        d = a(d, m(c(9), m(m(b2, b4), b6)))
        return d

    def curve_coeffs(self) -> Tuple[int, int, int, int, int]:
        return self.a1, self.a2, self.a3, self.a4, self.a6

    # ---- construction ----------------------------------------------------------
    def make(self, U: Poly, V: Poly = (), D: Poly = (1,)) -> KElem:
        R = self.R
        if not D:
            raise DivisionByZero("zero denominator in K")
        if not U and not V:
            return self.zero
        if len(D) > 1:
            g = R.gcd(D, U) if U else R.monic(D)
            if len(g) > 1 and V:
                g = R.gcd(g, V)
            if len(g) > 1:
                U = R.div_exact(U, g) if U else ()
                V = R.div_exact(V, g) if V else ()
                D = R.div_exact(D, g)
        lc = D[-1]
        if lc != 1:
            inv = self.F.inv_t[lc]
            U, V, D = R.scale(inv, U), R.scale(inv, V), R.scale(inv, D)
        return KElem(U, V, D, self)

    def const(self, c: int) -> KElem:
        return self.make(self.R.const(c))

    def from_int(self, n: int) -> KElem:
        return self.const(self.F.from_int(n))

    def theta_poly(self, a: Poly) -> KElem:
        return self.make(a)

    # ---- arithmetic ------------------------------------------------------------
    def add(self, x: KElem, y: KElem) -> KElem:
        R = self.R
        if y.is_zero():
            return x
        if x.is_zero():
            return y
        if x.D == y.D:
            return self.make(R.add(x.U, y.U), R.add(x.V, y.V), x.D)
        g = R.gcd(x.D, y.D)
        xd = R.div_exact(x.D, g) if len(g) > 1 else x.D
        yd = R.div_exact(y.D, g) if len(g) > 1 else y.D
        U = R.add(R.mul(x.U, yd), R.mul(y.U, xd))
        V = R.add(R.mul(x.V, yd), R.mul(y.V, xd))
        return self.make(U, V, R.mul(x.D, yd))

    def neg(self, x: KElem) -> KElem:
        return KElem(self.R.neg(x.U), self.R.neg(x.V), x.D, self)

    def sub(self, x: KElem, y: KElem) -> KElem:
        return self.add(x, self.neg(y))

    def mul(self, x: KElem, y: KElem) -> KElem:
        R = self.R
        if x.is_zero() or y.is_zero():
            return self.zero
        if x.is_one():
            return y
        if y.is_one():
            return x
        U = R.mul(x.U, y.U)
        V = R.add(R.mul(x.U, y.V), R.mul(x.V, y.U))
        if x.V and y.V:
            vv = R.mul(x.V, y.V)
            U = R.add(U, R.mul(vv, self.P_poly))
            V = R.sub(V, R.mul(vv, self.L_poly))
        return self.make(U, V, R.mul(x.D, y.D))

    def norm_poly(self, U: Poly, V: Poly) -> Poly:
        """N(U + V*eta) = U^2 - U*V*L - V^2*P in F_q[theta]."""
        R = self.R
        n = R.mul(U, U)
        if V:
            n = R.sub(n, R.mul(R.mul(U, V), self.L_poly))
            n = R.sub(n, R.mul(R.mul(V, V), self.P_poly))
        return n

    def inv(self, x: KElem) -> KElem:
        if x.is_zero():
            raise DivisionByZero("division by zero in K")
        R = self.R
        if not x.V:
            return self.make(x.D, (), x.U)
        N = self.norm_poly(x.U, x.V)
        cU = R.sub(x.U, R.mul(x.V, self.L_poly))
        cV = R.neg(x.V)
        return self.make(R.mul(x.D, cU), R.mul(x.D, cV), N)

    def div(self, x: KElem, y: KElem) -> KElem:
        return self.mul(x, self.inv(y))

    def pow(self, x: KElem, e: int) -> KElem:
        if e < 0:
            x, e = self.inv(x), -e
        result, base = self.one, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    # ---- degree and sign -------------------------------------------------------
    def deg_sgn(self, x: KElem) -> Tuple[int, int]:
        if x.is_zero():
            raise DegreeOfZero("degree of zero is undefined")
        du = 2 * (len(x.U) - 1) if x.U else None
        dv = 3 + 2 * (len(x.V) - 1) if x.V else None
        dd = 2 * (len(x.D) - 1)
        if dv is None or (du is not None and du > dv):
            return du - dd, x.U[-1]
        return dv - dd, x.V[-1]

    # ---- Frobenius -------------------------------------------------------------
    def _frobenius_once(self, x: KElem) -> KElem:
        key = (x.U, x.V, x.D)
        hit = self._frob_cache.get(key)
        if hit is not None:
            return hit
        R, q = self.R, self.q
        Rq, Sq = self.eta_q
        Uq, Vq, Dq = R.spread(x.U, q), R.spread(x.V, q), R.spread(x.D, q)
        U = R.add(Uq, R.mul(Vq, Rq)) if Vq else Uq
        V = R.mul(Vq, Sq)
        out = self.make(U, V, Dq)
        self._frob_cache[key] = out
        return out

    def frobenius(self, x: KElem, k: int = 1) -> KElem:
        if k < 0:
            raise ValueError("negative Frobenius twists are not supported")
        for _ in range(k):
            if x.is_zero() or (not x.V and len(x.U) <= 1 and x.D == (1,)):
                return x
            x = self._frobenius_once(x)
        return x

    def qth_root(self, x: KElem) -> KElem:
        """z with z**q == x, or NotAPower."""
        if x.is_zero():
            return x
        R, q = self.R, self.q
        Rq, Sq = self.eta_q
        E = R.pow(x.D, q - 1)
        NU, NV = R.mul(x.U, E), R.mul(x.V, E)
        vq, rem = R.divmod(NV, Sq)
        if rem:
            raise NotAPower("eta-part is not divisible by the Frobenius image of eta")
        uq = R.sub(NU, R.mul(vq, Rq))
        try:
            u = R.unspread(uq, q)
            v = R.unspread(vq, q)
        except ValueError as exc:
            raise NotAPower(str(exc)) from exc
        z = self.make(u, v, x.D)
        if self.frobenius(z, 1) != x:
            raise NotAPower("candidate root does not re-power to the input")
        return z

    def qth_root_k(self, x: KElem, k: int) -> KElem:
        for _ in range(k):
            x = self.qth_root(x)
        return x

    # ---- serialization ---------------------------------------------------------
    def from_json(self, obj: Dict[str, Any]) -> KElem:
        F = self.F
        def poly(key: str, default: Poly) -> Poly:
            if key not in obj:
                return default
            return self._trim([F.from_digits(d if isinstance(d, list) else [d]) for d in obj[key]])
        return self.make(poly("U", ()), poly("V", ()), poly("D", (1,)))

    def format(self, x: KElem) -> str:
        R = self.R
        if x.is_zero():
            return "0"
        parts = []
        if x.U:
            parts.append(R.format(x.U))
        if x.V:
            vs = R.format(x.V)
            parts.append("η" if x.V == (1,) else f"({vs})η")
        num = " + ".join(parts)
        if x.D == (1,):
            return num
        return f"({num})/({R.format(x.D)})"

    def random_elem(self, rng: random.Random, max_deg: int = 3, integral: bool = False,
                    nonzero: bool = False) -> KElem:
        q = self.q
        while True:
            U = self._trim([rng.randrange(q) for _ in range(rng.randint(0, max_deg + 1))])
            V = self._trim([rng.randrange(q) for _ in range(rng.randint(0, max_deg))])
            D: Poly = (1,)
            if not integral:
                D = self._trim([rng.randrange(q) for _ in range(rng.randint(0, max_deg))] + [1])
            x = self.make(U, V, D)
            if not nonzero or not x.is_zero():
                return x


# ---- module-level operations ------------------------------------------------
def k_arith(ctx: KContext, op: str, x: KElem, y: KElem) -> KElem:
    ops = {"add": ctx.add, "sub": ctx.sub, "mul": ctx.mul, "div": ctx.div}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](x, y)


def k_deg_sgn(x: KElem) -> Tuple[int, int]:
    return x.ctx.deg_sgn(x)


def k_frobenius(ctx: KContext, x: KElem, k: int) -> KElem:
    return ctx.frobenius(x, k)


def k_qth_root(ctx: KContext, x: KElem) -> KElem:
    return ctx.qth_root(x)
