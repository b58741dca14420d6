"""
Dense polynomials in t over K, stored as tuples of KElem (little-endian,
no trailing zeros). Used as the numerator/denominator slots of CurveFunc.
"""

from __future__ import annotations
from typing import Iterable, List, Sequence, Tuple

from src.errors import DivisionByZero, InternalCheckError
from src.fields.function_field import KContext, KElem

KPoly = Tuple[KElem, ...]


class KPolyRing:
    def __init__(self, ctx: KContext):
        self.ctx = ctx
        self.zero: KPoly = ()
        self.one: KPoly = (ctx.one,)

    @staticmethod
    def trim(seq: Sequence[KElem]) -> KPoly:
        n = len(seq)
        while n and seq[n - 1].is_zero():
            n -= 1
        return tuple(seq[:n])

    @staticmethod
    def deg(a: KPoly) -> int:
        return len(a) - 1

    def const(self, c: KElem) -> KPoly:
        return () if c.is_zero() else (c,)

    def from_fq(self, codes: Iterable[int]) -> KPoly:
        return self.trim([self.ctx.const(c) for c in codes])

    def add(self, a: KPoly, b: KPoly) -> KPoly:
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return a
        res = list(a)
        for i, y in enumerate(b):
            res[i] = res[i] + y
        return self.trim(res)

    def neg(self, a: KPoly) -> KPoly:
        return tuple(-x for x in a)

    def sub(self, a: KPoly, b: KPoly) -> KPoly:
        return self.add(a, self.neg(b))

    def scale(self, c: KElem, a: KPoly) -> KPoly:
        if c.is_zero():
            return ()
        if c.is_one():
            return a
        return self.trim([c * x for x in a])

    def mul(self, a: KPoly, b: KPoly) -> KPoly:
        if not a or not b:
            return ()
        zero = self.ctx.zero
        res: List[KElem] = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    res[i + j] = res[i + j] + x * y
        return self.trim(res)

    def divmod(self, a: KPoly, b: KPoly) -> Tuple[KPoly, KPoly]:
        if not b:
            raise DivisionByZero("polynomial division by zero over K")
        if len(a) < len(b):
            return (), a
        inv = b[-1].inv()
        db = len(b) - 1
        r = list(a)
        q: List[KElem] = [self.ctx.zero] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            if r[k].is_zero():
                continue
            c = r[k] * inv
            q[k - db] = c
            for j, y in enumerate(b):
                if not y.is_zero():
                    r[k - db + j] = r[k - db + j] - c * y
        return self.trim(q), self.trim(r[:db])

    def div_exact(self, a: KPoly, b: KPoly) -> KPoly:
        q, r = self.divmod(a, b)
        if r:
            raise InternalCheckError("inexact division in K[t]")
        return q

    def monic(self, a: KPoly) -> KPoly:
        if not a or a[-1].is_one():
            return a
        return self.scale(a[-1].inv(), a)

    def gcd(self, a: KPoly, b: KPoly) -> KPoly:
        if len(a) < len(b):
            a, b = b, a
        while b:
            if len(b) == 1:
                return self.one
            a, b = b, self.divmod(a, b)[1]
        return self.monic(a)

    def eval(self, a: KPoly, x: KElem) -> KElem:
        acc = self.ctx.zero
        for c in reversed(a):
            acc = acc * x + c
        return acc

    def twist(self, a: KPoly, k: int) -> KPoly:
        if k == 0:
            return a
        return tuple(self.ctx.frobenius(c, k) for c in a)

    def derivative(self, a: KPoly) -> KPoly:
        return self.trim([c * i for i, c in enumerate(a)][1:])
