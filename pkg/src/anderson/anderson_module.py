"""
AndersonModule
--------------
rho_t and rho_y of the n-th tensor power, read off the basis relations

    t*g_i = theta*g_i + a_i*g_(i+1) + g_(i+2)
    y*g_i = eta*g_i + y_i*g_(i+1) + z_i*g_(i+2) + g_(i+3)

where the coefficient of g_m, m = j*n + k, lands in the tau^j matrix at
row i, column k. For n >= 3 this reproduces
d[theta] = theta*I + N_1(a_1..a_(n-1)) + N_2, E_theta = E_1(a_n) + E_2;
for small n the same rule produces the extra tau^2 and tau^3 terms.
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Dict, List, Sequence

from src.anderson.tau_poly import TauPoly
from src.errors import InternalCheckError
from src.fields import matrix
from src.fields.function_field import KContext, KElem
from src.fields.matrix import Mat
from src.shtuka.tensor_basis import TensorBasis

logger = logging.getLogger(__name__)


def n_pattern(ctx: KContext, n: int, i: int, entries: Sequence[KElem] = None) -> Mat:
    """N_i(entries): entries along the i-th super-diagonal (sub-diagonal for i < 0)."""
    rows = [[ctx.zero] * n for _ in range(n)]
    positions = [(r, r + i) for r in range(n) if 0 <= r + i < n]
    for idx, (r, c) in enumerate(positions):
        rows[r][c] = ctx.one if entries is None else entries[idx]
    return matrix.from_rows(rows)


def e_pattern(ctx: KContext, n: int, i: int, entries: Sequence[KElem] = None) -> Mat:
    """E_i = N_(i-n)."""
    return n_pattern(ctx, n, i - n, entries)


@dataclass(frozen=True)
class AndersonModule:
    n: int
    d_theta: Mat
    d_eta: Mat
    E_theta: Mat
    E_eta: Mat
    rho_t: TauPoly
    rho_y: TauPoly

    @property
    def ctx(self) -> KContext:
        return self.rho_t.ctx

    @property
    def N_theta(self) -> Mat:
        return matrix.mat_sub(self.d_theta, matrix.scalar(self.ctx, self.ctx.theta, self.n))

    @property
    def N_eta(self) -> Mat:
        return matrix.mat_sub(self.d_eta, matrix.scalar(self.ctx, self.ctx.eta, self.n))

    def to_json(self) -> Dict[str, object]:
        def mat(M: Mat):
            return [[x.to_json() for x in row] for row in M]
        return {"n": self.n, "d_theta": mat(self.d_theta), "d_eta": mat(self.d_eta),
                "E_theta": mat(self.E_theta), "E_eta": mat(self.E_eta),
                "rho_t": self.rho_t.to_json(), "rho_y": self.rho_y.to_json()}


def _assemble(ctx: KContext, n: int, rows: List[Dict[int, KElem]]) -> TauPoly:
    """rows[i-1] maps an extended g-index m to its coefficient in (t or y)*g_i."""
    depth = max(((m - 1) // n for r in rows for m in r), default=0)
    mats = [[[ctx.zero] * n for _ in range(n)] for _ in range(depth + 1)]
    for i, row in enumerate(rows):
        for m, c in row.items():
            j, k = (m - 1) // n, (m - 1) % n
            mats[j][i][k] = mats[j][i][k] + c
    return TauPoly.make(ctx, n, [matrix.from_rows(M) for M in mats])


def build_module(tb: TensorBasis, check: bool = True) -> AndersonModule:
    ctx, n = tb.ctx, tb.n
    t_rows, y_rows = [], []
    for i in range(1, n + 1):
        t_rows.append({i: ctx.theta, i + 1: tb.a[i - 1], i + 2: ctx.one})
        y_rows.append({i: ctx.eta, i + 1: tb.yc[i - 1], i + 2: tb.zc[i - 1], i + 3: ctx.one})
    rho_t = _assemble(ctx, n, t_rows)
    rho_y = _assemble(ctx, n, y_rows)
    mod = AndersonModule(n, rho_t.coefficient(0), rho_y.coefficient(0),
                         rho_t.coefficient(1), rho_y.coefficient(1), rho_t, rho_y)
    if check:
        if not commutator(mod).is_zero():
            raise InternalCheckError("rho_t and rho_y do not commute")
        if not weierstrass_residual(mod).is_zero():
            raise InternalCheckError("rho does not satisfy the Weierstrass relation")
    logger.info("Anderson module built: n=%d, deg rho_t=%d, deg rho_y=%d", n, rho_t.degree(), rho_y.degree())
    return mod


def commutator(mod: AndersonModule) -> TauPoly:
    return mod.rho_t * mod.rho_y - mod.rho_y * mod.rho_t


def weierstrass_residual(mod: AndersonModule) -> TauPoly:
    """rho_y^2 + c1 rho_t rho_y + c3 rho_y - (rho_t^3 + c2 rho_t^2 + c4 rho_t + c6)."""
    ctx, n = mod.ctx, mod.n
    T, Y = mod.rho_t, mod.rho_y
    one = TauPoly.constant(ctx, matrix.identity(ctx, n))
    lhs = Y * Y + (T * Y).scale_fq(ctx.a1) + Y.scale_fq(ctx.a3)
    rhs = T ** 3 + (T * T).scale_fq(ctx.a2) + T.scale_fq(ctx.a4) + one.scale_fq(ctx.a6)
    return lhs - rhs


def rho(mod: AndersonModule, a: KElem) -> TauPoly:
    """rho_a for a = sum c_i theta^i + eta * sum d_i theta^i with c_i, d_i in F_q."""
    if not a.is_integral():
        raise ValueError("rho is defined on A = F_q[theta, eta] only")
    ctx, n = mod.ctx, mod.n
    out = TauPoly(ctx, n, ())
    power = TauPoly.constant(ctx, matrix.identity(ctx, n))
    for i in range(max(len(a.U), len(a.V))):
        if i < len(a.U) and a.U[i]:
            out = out + power.scale_fq(a.U[i])
        if i < len(a.V) and a.V[i]:
            out = out + (power * mod.rho_y).scale_fq(a.V[i])
        power = power * mod.rho_t
    return out


def d_of(mod: AndersonModule, a: KElem) -> Mat:
    """Constant part d[a] of rho_a, computed without tau-composition."""
    if not a.is_integral():
        raise ValueError("d[a] is defined on A = F_q[theta, eta] only")
    ctx, n = mod.ctx, mod.n
    out = matrix.zeros(ctx, n)
    power = matrix.identity(ctx, n)
    for i in range(max(len(a.U), len(a.V))):
        if i < len(a.U) and a.U[i]:
            out = matrix.mat_add(out, matrix.mat_scale(ctx.const(a.U[i]), power))
        if i < len(a.V) and a.V[i]:
            out = matrix.mat_add(out, matrix.mat_scale(ctx.const(a.V[i]), matrix.mat_mul(power, mod.d_eta)))
        power = matrix.mat_mul(power, mod.d_theta)
    return out
