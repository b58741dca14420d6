"""
Power sums over monic elements of A
-----------------------------------
A = F_q[theta, eta] is graded by deg theta = 2, deg eta = 3, so its F_q-basis
{theta^i, theta^j*eta} has pairwise distinct degrees and every degree except 1
carries exactly one basis monomial. A_(d+) is that monomial plus any F_q
combination of the lower ones.
"""

from __future__ import annotations
import itertools
import logging
from typing import Iterator, List, Optional, Tuple

from src.curve.curve_function import CurveFunc, CurveRing
from src.curve.points import point_frobenius, point_negate, xi
from src.errors import RangeUnsupported
from src.fields.function_field import KContext, KElem
from src.fields.poly_ring import trim
from src.shtuka.shtuka_function import ShtukaData

logger = logging.getLogger(__name__)

# (theta exponent, carries eta)
Monomial = Tuple[int, bool]


def monomial_degree(m: Monomial) -> int:
    return 2 * m[0] + (3 if m[1] else 0)


def monomials_below(d: int) -> List[Monomial]:
    out = [(i, False) for i in range((d + 1) // 2) if 2 * i < d]
    out += [(j, True) for j in range(max(d - 3, 0)) if 2 * j + 3 < d]
    return sorted(out, key=monomial_degree)


def leading_monomial(d: int) -> Monomial:
    if d < 0 or d == 1:
        raise ValueError(f"A has no elements of degree {d}")
    return (d // 2, False) if d % 2 == 0 else ((d - 3) // 2, True)


def _elem(ctx: KContext, terms: List[Tuple[Monomial, int]]) -> KElem:
    U: List[int] = []
    V: List[int] = []
    F = ctx.F
    for (i, has_eta), c in terms:
        target = V if has_eta else U
        while len(target) <= i:
            target.append(0)
        target[i] = F.add(target[i], c)
    return ctx.make(trim(U), trim(V))


def iter_monic(ctx: KContext, d: int) -> Iterator[KElem]:
    if d < 0:
        raise ValueError("degree must be >= 0")
    if d == 1:
        return
    lead = leading_monomial(d)
    lower = monomials_below(d)
    for combo in itertools.product(range(ctx.q), repeat=len(lower)):
        yield _elem(ctx, [(lead, 1)] + [(m, c) for m, c in zip(lower, combo) if c])


def monic_enumerate(ctx: KContext, d: int) -> List[KElem]:
    return list(iter_monic(ctx, d))


def power_sum_bruteforce(ctx: KContext, i: int, s: int) -> KElem:
    """S_i(s) = sum over monic a of degree i of 1/a^s."""
    if s < 1:
        raise ValueError("s must be >= 1")
    total = ctx.zero
    count = 0
    for a in iter_monic(ctx, i):
        total = total + (a ** s).inv()
        count += 1
    logger.debug("S_%d(%d) summed over %d monic elements", i, s, count)
    return total


def w_line(ring: CurveRing, S: ShtukaData, i: int) -> CurveFunc:
    """Sign-one line with zeros V, -V^(i-1) and V^(i-1) - V."""
    if i < 2:
        raise ValueError("w_i is defined for i >= 2")
    ctx = ring.ctx
    return ring.line_through(S.V, point_negate(ctx, point_frobenius(ctx, S.V, i - 1)))


def power_sum_closed(ring: CurveRing, S: ShtukaData, i: int, s: int) -> KElem:
    """S_i(s) = (nu^(i) / (w_i^(1) f^(1) ... f^(i)))^s at Xi, valid for 1 <= s <= q-1."""
    ctx = ring.ctx
    if not 1 <= s <= ctx.q - 1:
        raise RangeUnsupported(f"closed-form power sums need 1 <= s <= {ctx.q - 1}, got s = {s}")
    if i < 2:
        raise ValueError("the closed form starts at i = 2")
    factors = [(S.nu.twist(i), s), (w_line(ring, S, i).twist(1), -s)]
    f_j = S.f
    for _ in range(i):
        f_j = f_j.twist(1)
        factors.append((f_j, -s))
    return ring.eval_product(factors, xi(ctx))


def power_sum(ring: CurveRing, S: Optional[ShtukaData], i: int, s: int, mode: str = "brute") -> KElem:
    if mode == "closed" and i >= 2:
        return power_sum_closed(ring, S, i, s)
    return power_sum_bruteforce(ring.ctx, i, s)
