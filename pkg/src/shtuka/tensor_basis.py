"""
TensorBasis
-----------
The g- and h-bases of the n-th tensor power together with the structure
constants a_i, b_i, y_i, z_i:

    t*g_i = theta*g_i + a_i*g_(i+1) + g_(i+2)
    y*g_i = eta*g_i + y_i*g_(i+1) + z_i*g_(i+2) + g_(i+3)

Indices beyond n wrap with g_(jn+k) = (f f^(1) ... f^(j-1))^n g_k^(j) and
sigma^j(h_k) = (f f^(-1) ... f^(-j+1))^n h_k^(-j). Negative twists never
appear in the computation: h-side quantities are always requested at a
twist J large enough to keep every exponent non-negative.
"""

from __future__ import annotations
import logging
from typing import Any, Dict, List, Optional, Tuple

from src.curve.curve_function import CurveFunc, CurveRing
from src.curve.points import Point, point_add, point_frobenius, point_mul, xi
from src.errors import InternalCheckError, NotAPower
from src.fields import matrix
from src.fields.function_field import KElem
from src.shtuka.shtuka_function import ShtukaData

logger = logging.getLogger(__name__)


class TensorBasis:
    """
    Attributes:
        n: tensor power; S: the shtuka data.
        points: points[i] = [i]V^(1) + [n-i]V for 0 <= i <= n.
        g, h: lists of CurveFunc (g[0] is g_1).
        a, b, yc, zc: structure constants as lists of KElem.
        nu_k, delta_k, m_k: ratio data with g_(k+1)/g_k = nu_k/delta_k.
    """

    def __init__(self, ring: CurveRing, S: ShtukaData, n: int, check: bool = True):
        if n < 1:
            raise ValueError("tensor power n must be >= 1")
        self.ring, self.S, self.n = ring, S, n
        self.ctx = ring.ctx
        self._twists: Dict[Tuple[str, int, int], CurveFunc] = {}
        self._fprods: Dict[Tuple[int, int], CurveFunc] = {}
        ctx = self.ctx
        V1 = point_frobenius(ctx, S.V, 1)
        self.points: List[Point] = [point_add(ctx, point_mul(ctx, i, V1), point_mul(ctx, n - i, S.V))
                                    for i in range(n + 1)]
        self.g, self.nu_k, self.delta_k, self.m_k = basis_g(ring, S, n, self.points)
        self.h = basis_h(ring, S, n, self.g, self.points)
        self.a, self.b, self.yc, self.zc = structure_constants(self)
        if check:
            check_product_identities(self)
            check_t_identity(self)
        logger.info("tensor basis for n=%d ready", n)

    # ---- twisted and extended basis functions ----------------------------------
    def _tw(self, label: str, idx: int, k: int) -> CurveFunc:
        key = (label, idx, k)
        hit = self._twists.get(key)
        if hit is None:
            base = {"f": lambda: self.S.f, "g": lambda: self.g[idx - 1], "h": lambda: self.h[idx - 1]}[label]()
            hit = base if k == 0 else self._tw(label, idx, k - 1).twist(1)
            self._twists[key] = hit
        return hit

    def f_tw(self, k: int) -> CurveFunc:
        return self._tw("f", 0, k)

    def f_prod(self, lo: int, hi: int) -> CurveFunc:
        """f^(lo) f^(lo+1) ... f^(hi); the empty product is 1."""
        if hi < lo:
            return self.ring.one
        key = (lo, hi)
        hit = self._fprods.get(key)
        if hit is None:
            hit = self.f_prod(lo, hi - 1) * self.f_tw(hi)
            self._fprods[key] = hit
        return hit

    def g_ext(self, i: int, J: int = 0) -> CurveFunc:
        """g_i^(J) for any i >= 1."""
        n = self.n
        j, k = (i - 1) // n, (i - 1) % n + 1
        base = self._tw("g", k, J + j)
        if j == 0:
            return base
        return self.f_prod(J, J + j - 1) ** n * base

    def h_ext(self, i: int, J: int = 0) -> CurveFunc:
        """h_i^(J) for any i >= 1; needs J >= (i-1)//n."""
        n = self.n
        j, k = (i - 1) // n, (i - 1) % n + 1
        if J < j:
            raise ValueError(f"h_{i} needs a twist of at least {j}")
        base = self._tw("h", k, J - j)
        if j == 0:
            return base
        return self.f_prod(J - j + 1, J) ** n * base

    def b_twisted(self, i: int, J: int) -> KElem:
        """b_i^(J); b_n^(J) = a_n^(J-1) for J >= 1."""
        if i == self.n and J >= 1:
            return self.a[self.n - 1].twist(J - 1)
        return self.b[i - 1].twist(J)

    def to_json(self) -> Dict[str, Any]:
        return {
            "V": self.S.V.to_json(), "f": self.S.f.to_json(),
            "g": [x.to_json() for x in self.g], "h": [x.to_json() for x in self.h],
            "a": [x.to_json() for x in self.a], "b": [x.to_json() for x in self.b],
            "y": [x.to_json() for x in self.yc], "z": [x.to_json() for x in self.zc],
        }


def basis_g(ring: CurveRing, S: ShtukaData, n: int, points: List[Point]):
    X = xi(ring.ctx)
    g1 = ring.normalize(ring.one / ring.miller(n, S.V))
    g = [g1]
    nus, deltas, ms = [], [], []
    for k in range(1, n):
        # div(nu_k/delta_k) = (Xi) - (inf) + (points[k]) - (points[k-1])
        nu = ring.line_through(X, points[k])
        delta = ring.vertical(points[k - 1])
        nus.append(nu)
        deltas.append(delta)
        ms.append(-nu.numU[1] if len(nu.numU) > 1 else ring.ctx.zero)
        g.append(ring.normalize(g[-1] * nu / delta))
    return g, nus, deltas, ms


def basis_h(ring: CurveRing, S: ShtukaData, n: int, g: List[CurveFunc], points: List[Point]) -> List[CurveFunc]:
    h: List[Optional[CurveFunc]] = [None] * n
    h[0] = ring.normalize((ring.t_minus(points[0].x) / g[0]).twist(1))
    fn = S.f ** n
    for j in range(1, n):
        h[n - j] = ring.normalize(fn * ring.t_minus(points[j].x) / g[j])
    return h


def _clear(ring: CurveRing, funcs: List[CurveFunc]) -> List[List[KElem]]:
    """Coefficient vectors of the numerators after clearing a common denominator."""
    kp = ring.kp
    D = kp.one
    for F in funcs:
        D = kp.div_exact(kp.mul(D, F.den), kp.gcd(D, F.den))
    out = []
    for F in funcs:
        G = F * ring.make(D)
        if len(G.den) != 1:
            raise InternalCheckError("common denominator did not clear")
        out.append((G.numU, G.numV))
    width_u = max(len(u) for u, _ in out)
    width_v = max(len(v) for _, v in out)
    zero = ring.ctx.zero
    return [list(u) + [zero] * (width_u - len(u)) + list(v) + [zero] * (width_v - len(v)) for u, v in out]


def solve_relation(ring: CurveRing, target: CurveFunc, basis: List[CurveFunc]) -> List[KElem]:
    """K-coefficients c with target = sum c_j * basis_j, exactly."""
    vecs = _clear(ring, [target] + basis)
    return matrix.solve(ring.ctx, vecs[1:], vecs[0])


def structure_constants(tb: TensorBasis):
    ctx, ring, n = tb.ctx, tb.ring, tb.n
    lam0 = 2 * ctx.eta + ctx.const(ctx.a1) * ctx.theta + ctx.const(ctx.a3)
    a = [lam0 / (ctx.theta - tb.points[i].x) for i in range(1, n + 1)]
    b = [a[n - j - 1] for j in range(1, n)]
    try:
        b.append(ctx.qth_root(a[n - 1]))
    except NotAPower as exc:
        raise InternalCheckError(f"a_n is not a q-th power: {exc}") from exc
    yc, zc = [], []
    y, eta = ring.y, ring.const(ctx.eta)
    for i in range(1, n + 1):
        gi = tb.g_ext(i)
        target = y * gi - eta * gi - tb.g_ext(i + 3)
        yi, zi = solve_relation(ring, target, [tb.g_ext(i + 1), tb.g_ext(i + 2)])
        yc.append(yi)
        zc.append(zi)
    return a, b, yc, zc


# ---- identity checks -----------------------------------------------------------
def check_product_identities(tb: TensorBasis) -> None:
    ring, n, S = tb.ring, tb.n, tb.S
    lhs = tb.g[0].twist(1) * tb.h[0]
    rhs = ring.t_minus(tb.points[0].x).twist(1)
    if lhs != rhs:
        raise InternalCheckError("g_1^(1) h_1 != (t - t([n]V))^(1)")
    fn = S.f ** n
    for j in range(1, n):
        if tb.g[j] * tb.h[n - j] != fn * ring.t_minus(tb.points[j].x):
            raise InternalCheckError(f"g_{j + 1} h_{n - j + 1} != f^n (t - t(P))")


def check_t_identity(tb: TensorBasis) -> None:
    ring, ctx = tb.ring, tb.ctx
    t, theta = ring.t, ring.const(ctx.theta)
    for i in range(1, tb.n + 1):
        gi = tb.g_ext(i)
        lhs = t * gi
        rhs = theta * gi + ring.const(tb.a[i - 1]) * tb.g_ext(i + 1) + tb.g_ext(i + 2)
        if lhs != rhs:
            raise InternalCheckError(f"t-identity fails for g_{i}")


def check_y_identity(tb: TensorBasis) -> None:
    ring, ctx = tb.ring, tb.ctx
    y, eta = ring.y, ring.const(ctx.eta)
    for i in range(1, tb.n + 1):
        gi = tb.g_ext(i)
        rhs = (eta * gi + ring.const(tb.yc[i - 1]) * tb.g_ext(i + 1)
               + ring.const(tb.zc[i - 1]) * tb.g_ext(i + 2) + tb.g_ext(i + 3))
        if y * gi != rhs:
            raise InternalCheckError(f"y-identity fails for g_{i}")


def check_h_identity(tb: TensorBasis, J: int = 2) -> None:
    """t*h_i^(J) = theta^(q^J) h_i^(J) + b_i^(q^J) h_(i+1)^(J) + h_(i+2)^(J)."""
    ring, ctx = tb.ring, tb.ctx
    t, theta = ring.t, ring.const(ctx.theta.twist(J))
    for i in range(1, tb.n + 1):
        hi = tb.h_ext(i, J)
        rhs = theta * hi + ring.const(tb.b_twisted(i, J)) * tb.h_ext(i + 1, J) + tb.h_ext(i + 2, J)
        if t * hi != rhs:
            raise InternalCheckError(f"t-identity fails for h_{i} at twist {J}")


def a_by_solve(tb: TensorBasis) -> List[KElem]:
    """a_i recovered from the t-identity by linear algebra, independent of the closed form."""
    ring, ctx = tb.ring, tb.ctx
    out = []
    for i in range(1, tb.n + 1):
        gi = tb.g_ext(i)
        target = ring.t * gi - ring.const(ctx.theta) * gi - tb.g_ext(i + 2)
        out.append(solve_relation(ring, target, [tb.g_ext(i + 1)])[0])
    return out


def deltatwist_identity(tb: TensorBasis) -> bool:
    """(delta^(1))^n (t - t([n]V^(1))) == (-1)^(n+1) h_1 (h_1 o [-1])."""
    ring, n = tb.ring, tb.n
    lhs = tb.S.delta.twist(1) ** n * ring.t_minus(tb.points[n].x)
    sign = 1 if (n + 1) % 2 == 0 else -1
    rhs = tb.h[0] * ring.compose_negation(tb.h[0]) * sign
    return lhs == rhs


def basis_divisor_orders(tb: TensorBasis) -> Dict[str, Tuple[int, int]]:
    """(observed, expected) orders for the g_1, g_(k+1)/g_k and h_1 divisor claims."""
    ring, ctx, n, S = tb.ring, tb.ctx, tb.n, tb.S
    V, X = S.V, xi(ctx)
    V1 = point_frobenius(ctx, V, 1)
    out: Dict[str, Tuple[int, int]] = {
        "g1@V": (ring.order_at(tb.g[0], V), -n),
        "g1@inf": (-tb.g[0].deg(), n - 1),
        "h1@V1": (ring.order_at(tb.h[0], V1), n),
        "h1@inf": (-tb.h[0].deg(), -(n + 1)),
    }
    if n > 1:
        out["g1@[n]V"] = (ring.order_at(tb.g[0], tb.points[0]), 1)
    for k in range(1, n):
        ratio = tb.g[k] / tb.g[k - 1]
        out[f"g{k + 1}/g{k}@Xi"] = (ring.order_at(ratio, X), 1)
        out[f"g{k + 1}/g{k}@P{k}"] = (ring.order_at(ratio, tb.points[k]), 1)
        out[f"g{k + 1}/g{k}@P{k - 1}"] = (ring.order_at(ratio, tb.points[k - 1]), -1)
    return out
