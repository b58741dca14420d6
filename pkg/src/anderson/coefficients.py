"""
Exponential and logarithm coefficients
--------------------------------------
Exp(z) = sum Q_i z^(i), Log(z) = sum P_i z^(i), Q_0 = P_0 = I.

Q_i for n >= 2 come from the recursion

    M_2 Q_(i-1)^(1) + E_1 Q_(i-1)^(1) d[theta]^(i)
        = Q_i d[eta]^(i) - (N_1 + M_m) Q_i d[theta]^(i) - M_1 Q_i,

solved through the nilpotent map beta_i; for n = 1 they are the products
1/(f f^(1) ... f^(i-1))|Xi^(i). P_i is the formal inverse. Independent
routes (Sylvester back-substitution, first-column evaluation, residues and
the bottom-row evaluation) are exposed for cross-checking.
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Dict, List, Tuple

from src.anderson.anderson_module import AndersonModule, d_of, e_pattern, n_pattern, rho
from src.anderson.tau_poly import TauPoly
from src.curve.points import point_frobenius, xi
from src.errors import InternalCheckError
from src.fields import matrix
from src.fields.function_field import KElem
from src.fields.matrix import Mat
from src.shtuka.tensor_basis import TensorBasis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoeffSeries:
    kind: str
    mats: Tuple[Mat, ...]

    def __getitem__(self, i: int) -> Mat:
        return self.mats[i]

    def __len__(self) -> int:
        return len(self.mats)

    def to_json(self):
        return [{"index": i, "matrix": [[x.to_json() for x in row] for row in M]}
                for i, M in enumerate(self.mats)]


@dataclass(frozen=True)
class ExpRecursionData:
    M_m: Mat
    M_1: Mat
    M_2: Mat
    M_d: Mat
    M_n: Mat
    N_1: Mat
    E_1: Mat


def recursion_data(mod: AndersonModule, tb: TensorBasis, check: bool = True) -> ExpRecursionData:
    ctx, n = tb.ctx, tb.n
    a, yc, zc = tb.a, tb.yc, tb.zc
    a_next = [a[k + 1] if k + 1 < n else a[0].twist(1) for k in range(n)]
    diff = [zc[k] - a_next[k] for k in range(n)]
    p = [ctx.eta - ctx.theta * diff[k] for k in range(n)]
    r = [yc[k] - ctx.theta - a[k] * diff[k] for k in range(n)]
    M_d = matrix.diag(ctx, p)
    M_n = n_pattern(ctx, n, 1, r[: n - 1])
    data = ExpRecursionData(
        M_m=matrix.diag(ctx, diff),
        M_1=matrix.mat_add(M_d, M_n),
        M_2=e_pattern(ctx, n, 1, r[n - 1:]),
        M_d=M_d,
        M_n=M_n,
        N_1=n_pattern(ctx, n, 1),
        E_1=e_pattern(ctx, n, 1),
    )
    if check:
        lhs = TauPoly.make(ctx, n, [data.M_1, data.M_2])
        m_tau = TauPoly.make(ctx, n, [matrix.mat_add(data.N_1, data.M_m), data.E_1])
        if not (mod.rho_y - m_tau * mod.rho_t - lhs).is_zero():
            raise InternalCheckError("M_1 + M_2 tau != rho_y - (N_1 + E_1 tau + M_m) rho_t")
    return data


def m_diag(mod: AndersonModule, data: ExpRecursionData, i: int) -> Mat:
    ctx, n = mod.ctx, mod.n
    eta_i, theta_i = ctx.eta.twist(i), ctx.theta.twist(i)
    return matrix.mat_sub(matrix.mat_sub(matrix.scalar(ctx, eta_i, n), matrix.mat_scale(theta_i, data.M_m)), data.M_d)


def beta_map(mod: AndersonModule, data: ExpRecursionData, i: int, Y: Mat, MD_inv: Mat = None) -> Mat:
    ctx = mod.ctx
    MD_inv = MD_inv if MD_inv is not None else matrix.diag_inverse(m_diag(mod, data, i))
    Ne = matrix.mat_twist(mod.N_eta, i)
    Nt = matrix.mat_twist(mod.N_theta, i)
    mm = matrix.mat_mul
    inner = mm(Y, Ne)
    inner = matrix.mat_sub(inner, matrix.mat_scale(ctx.theta.twist(i), mm(data.N_1, Y)))
    inner = matrix.mat_sub(inner, mm(mm(data.M_m, Y), Nt))
    inner = matrix.mat_sub(inner, mm(mm(data.N_1, Y), Nt))
    inner = matrix.mat_sub(inner, mm(data.M_n, Y))
    return mm(MD_inv, inner)


def _recursion_step(mod: AndersonModule, data: ExpRecursionData, Q_prev: Mat, i: int) -> Mat:
    mm = matrix.mat_mul
    Qp1 = matrix.mat_twist(Q_prev, 1)
    W = matrix.mat_add(mm(data.M_2, Qp1), mm(mm(data.E_1, Qp1), matrix.mat_twist(mod.d_theta, i)))
    MD_inv = matrix.diag_inverse(m_diag(mod, data, i))
    term = mm(MD_inv, W)
    Q = term
    for j in range(1, 2 * mod.n):
        term = beta_map(mod, data, i, term, MD_inv)
        if matrix.mat_is_zero(term):
            break
        Q = matrix.mat_sub(Q, term) if j % 2 else matrix.mat_add(Q, term)
    return Q


def recurrence_residual(mod: AndersonModule, data: ExpRecursionData, Q_prev: Mat, Q: Mat, i: int) -> Mat:
    mm = matrix.mat_mul
    Qp1 = matrix.mat_twist(Q_prev, 1)
    lhs = matrix.mat_add(mm(data.M_2, Qp1), mm(mm(data.E_1, Qp1), matrix.mat_twist(mod.d_theta, i)))
    rhs = mm(Q, matrix.mat_twist(mod.d_eta, i))
    rhs = matrix.mat_sub(rhs, mm(mm(matrix.mat_add(data.N_1, data.M_m), Q), matrix.mat_twist(mod.d_theta, i)))
    rhs = matrix.mat_sub(rhs, mm(data.M_1, Q))
    return matrix.mat_sub(lhs, rhs)


def exp_closed_form_n1(tb: TensorBasis, m: int) -> List[KElem]:
    """1/(f f^(1) ... f^(i-1))|Xi^(i) for 0 <= i <= m."""
    ring, ctx = tb.ring, tb.ctx
    X = xi(ctx)
    f_at = [None] + [ring.eval(tb.S.f, point_frobenius(ctx, X, k)) for k in range(1, m + 1)]
    out = [ctx.one]
    for i in range(1, m + 1):
        den = ctx.one
        for j in range(i):
            den = den * f_at[i - j].twist(j)
        out.append(den.inv())
    return out


def exp_coeffs(mod: AndersonModule, tb: TensorBasis, m: int, check: bool = True) -> CoeffSeries:
    ctx, n = mod.ctx, mod.n
    if n == 1:
        return CoeffSeries("exp", tuple(((c,),) for c in exp_closed_form_n1(tb, m)))
    data = recursion_data(mod, tb, check=check)
    mats = [matrix.identity(ctx, n)]
    for i in range(1, m + 1):
        Q = _recursion_step(mod, data, mats[-1], i)
        if check and not matrix.mat_is_zero(recurrence_residual(mod, data, mats[-1], Q, i)):
            raise InternalCheckError(f"recurrence residual nonzero at i={i}")
        mats.append(Q)
        logger.debug("Q_%d computed", i)
    return CoeffSeries("exp", tuple(mats))


def exp_coeffs_by_sylvester(mod: AndersonModule, m: int) -> CoeffSeries:
    """Solve d[theta] Q_m - Q_m d[theta]^(m) = -sum_(k>=1) A_k Q_(m-k)^(k) entrywise."""
    ctx, n = mod.ctx, mod.n
    mats = [matrix.identity(ctx, n)]
    for i in range(1, m + 1):
        R = matrix.zeros(ctx, n)
        for k in range(1, min(i, mod.rho_t.degree()) + 1):
            R = matrix.mat_sub(R, matrix.mat_mul(mod.rho_t.coefficient(k), matrix.mat_twist(mats[i - k], k)))
        Nt = mod.N_theta
        Nti = matrix.mat_twist(Nt, i)
        gap = (ctx.theta - ctx.theta.twist(i)).inv()
        Q = [[ctx.zero] * n for _ in range(n)]
        for r in range(n - 1, -1, -1):
            for c in range(n):
                acc = R[r][c]
                for k in range(r + 1, n):
                    if not Nt[r][k].is_zero():
                        acc = acc - Nt[r][k] * Q[k][c]
                for k in range(c):
                    if not Nti[k][c].is_zero():
                        acc = acc + Q[r][k] * Nti[k][c]
                Q[r][c] = acc * gap
        mats.append(matrix.from_rows(Q))
    return CoeffSeries("exp", tuple(mats))


def log_coeffs(exp: CoeffSeries, m: int = None) -> CoeffSeries:
    """P_m = -sum_(j<m) P_j Q_(m-j)^(j)."""
    m = len(exp) - 1 if m is None else m
    if m >= len(exp):
        raise ValueError(f"need exponential coefficients up to {m}")
    ctx = exp[0][0][0].ctx
    n = len(exp[0])
    mats = [matrix.identity(ctx, n)]
    for i in range(1, m + 1):
        acc = matrix.zeros(ctx, n)
        for j in range(i):
            acc = matrix.mat_sub(acc, matrix.mat_mul(mats[j], matrix.mat_twist(exp[i - j], j)))
        mats.append(acc)
    return CoeffSeries("log", tuple(mats))


def inversion_residual(exp: CoeffSeries, log: CoeffSeries, m: int) -> Mat:
    """sum_(j+k=m) Q_j P_k^(j) - delta_(m,0) I."""
    ctx = exp[0][0][0].ctx
    n = len(exp[0])
    acc = matrix.zeros(ctx, n) if m else matrix.mat_neg(matrix.identity(ctx, n))
    for j in range(m + 1):
        acc = matrix.mat_add(acc, matrix.mat_mul(exp[j], matrix.mat_twist(log[m - j], j)))
    return acc


# ---- evaluation oracles --------------------------------------------------------
def exp_first_column(tb: TensorBasis, i: int) -> List[KElem]:
    """(g_1..g_n)|Xi^(i) / (g_1^(i) (f...f^(i-1))^n)|Xi^(i)."""
    ring, ctx, n = tb.ring, tb.ctx, tb.n
    Xi_i = point_frobenius(ctx, xi(ctx), i)
    den = ring.eval(tb.g[0], xi(ctx)).twist(i)
    for j in range(i):
        den = den * ring.eval(tb.S.f, point_frobenius(ctx, xi(ctx), i - j)).twist(j) ** n
    return [ring.eval(g, Xi_i) / den for g in tb.g]


def log_residue_matrix(tb: TensorBasis, i: int) -> Mat:
    """<Res_Xi(g_j h_(n-k+1)^(i) / (f f^(1) ... f^(i))^n lambda)>_(j,k)."""
    ring, ctx, n = tb.ring, tb.ctx, tb.n
    X = xi(ctx)
    fs = [(tb.f_tw(j), -n) for j in range(i + 1)]
    rows = []
    for j in range(1, n + 1):
        row = []
        for k in range(1, n + 1):
            row.append(ring.residue_product([(tb.g[j - 1], 1), (tb.h_ext(n - k + 1, i), 1)] + fs, X))
        rows.append(row)
    return matrix.from_rows(rows)


def log_bottom_row(tb: TensorBasis, i: int) -> List[KElem]:
    """h_(n-k+1)^(i) / (h_1 (f^(1) ... f^(i))^n) at Xi, for k = 1..n."""
    ring, n = tb.ring, tb.n
    X = xi(tb.ctx)
    den = [(tb.h[0], -1)] + [(tb.f_tw(j), -n) for j in range(1, i + 1)]
    return [ring.eval_product([(tb.h_ext(n - k + 1, i), 1)] + den, X) for k in range(1, n + 1)]


def log_closed_form_n1(tb: TensorBasis, m: int) -> List[KElem]:
    """delta^(i+1) / (delta^(1) f^(1) ... f^(i)) at Xi."""
    ring, ctx = tb.ring, tb.ctx
    X = xi(ctx)
    d1 = ring.eval(tb.S.delta.twist(1), X)
    out = []
    den = d1
    for i in range(m + 1):
        if i:
            den = den * ring.eval(tb.f_tw(i), X)
        out.append(ring.eval(tb.S.delta.twist(i + 1), X) / den)
    return out


def functional_equation_check(mod: AndersonModule, exp: CoeffSeries, depth: int) -> Dict[str, Dict[int, bool]]:
    """Compare tau^k coefficients of rho_a o Exp and Exp o d[a] for a in {t, y}, k <= depth."""
    if depth >= len(exp):
        raise ValueError(f"need exponential coefficients up to {depth}")
    ctx = mod.ctx
    report: Dict[str, Dict[int, bool]] = {}
    for name, a in (("t", ctx.theta), ("y", ctx.eta)):
        rho_a = rho(mod, a)
        d = d_of(mod, a)
        ok = {}
        for k in range(depth + 1):
            left = matrix.zeros(ctx, mod.n)
            for j in range(min(k, rho_a.degree()) + 1):
                left = matrix.mat_add(left, matrix.mat_mul(rho_a.coefficient(j), matrix.mat_twist(exp[k - j], j)))
            right = matrix.mat_mul(exp[k], matrix.mat_twist(d, k))
            ok[k] = matrix.mat_is_zero(matrix.mat_sub(left, right))
        report[name] = ok
    return report
