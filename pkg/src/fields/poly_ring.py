"""
PolyRing
--------
Dense univariate polynomials over F_q, stored as immutable tuples of element
codes (little-endian, no trailing zeros; the zero polynomial is ()).

Small operands use table-driven Python loops; large operands switch to numpy
(digit-plane convolutions for products, vectorized row updates for division).
"""

from __future__ import annotations
from typing import List, Sequence, Tuple
import numpy as np

from src.errors import DivisionByZero, InternalCheckError
from src.fields.finite_field import FiniteField

Poly = Tuple[int, ...]

# Operand sizes above which the numpy kernels win over plain loops.
MUL_NUMPY_THRESHOLD = 48 * 48
DIV_NUMPY_THRESHOLD = 64


def trim(seq: Sequence[int]) -> Poly:
    n = len(seq)
    while n and seq[n - 1] == 0:
        n -= 1
    return tuple(seq[:n])


class PolyRing:
    def __init__(self, field: FiniteField):
        self.F = field
        self.zero: Poly = ()
        self.one: Poly = (1,)

    # ---- basic accessors -------------------------------------------------------
    @staticmethod
    def deg(a: Poly) -> int:
        return len(a) - 1

    @staticmethod
    def lc(a: Poly) -> int:
        return a[-1] if a else 0

    def const(self, c: int) -> Poly:
        return (c,) if c else ()

    def monomial(self, c: int, k: int) -> Poly:
        return (0,) * k + (c,) if c else ()

    # ---- additive structure ----------------------------------------------------
    def add(self, a: Poly, b: Poly) -> Poly:
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return a
        t = self.F.add_t
        res = list(a)
        for i, y in enumerate(b):
            if y:
                res[i] = t[res[i]][y]
        return trim(res)

    def sub(self, a: Poly, b: Poly) -> Poly:
        if not b:
            return a
        t = self.F.sub_t
        res = list(a) + [0] * (len(b) - len(a))
        for i, y in enumerate(b):
            if y:
                res[i] = t[res[i]][y]
        return trim(res)

    def neg(self, a: Poly) -> Poly:
        n = self.F.neg_t
        return tuple(n[x] for x in a)

    def scale(self, c: int, a: Poly) -> Poly:
        if c == 0 or not a:
            return ()
        if c == 1:
            return a
        row = self.F.mul_t[c]
        return tuple(row[x] for x in a)

    def shift(self, a: Poly, k: int) -> Poly:
        return (0,) * k + a if a else ()

    # ---- multiplication --------------------------------------------------------
    def mul(self, a: Poly, b: Poly) -> Poly:
        if not a or not b:
            return ()
        if len(a) == 1:
            return self.scale(a[0], b)
        if len(b) == 1:
            return self.scale(b[0], a)
        if len(a) * len(b) >= MUL_NUMPY_THRESHOLD:
            return self._mul_np(a, b)
        mt, at = self.F.mul_t, self.F.add_t
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mt[x]
                for j, y in enumerate(b):
                    if y:
                        k = i + j
                        res[k] = at[res[k]][row[y]]
        return trim(res)

    def _mul_np(self, a: Poly, b: Poly) -> Poly:
        F = self.F
        p, r = F.p, F.r
        A = np.asarray(a, dtype=np.int64)
        B = np.asarray(b, dtype=np.int64)
        if r == 1:
            return trim((np.convolve(A, B) % p).tolist())
        Ad = F.digits_np[A]
        Bd = F.digits_np[B]
        length = len(a) + len(b) - 1
        planes = np.zeros((2 * r - 1, length), dtype=np.int64)
        for i in range(r):
            if not Ad[:, i].any():
                continue
            for j in range(r):
                planes[i + j] += np.convolve(Ad[:, i], Bd[:, j])
        mod = F.modulus
        for k in range(2 * r - 2, r - 1, -1):
            top = planes[k] % p
            for l in range(r):
                if mod[l]:
                    planes[k - r + l] -= mod[l] * top
        planes = planes[:r] % p
        codes = F.powers_np @ planes
        return trim(codes.tolist())

    def square(self, a: Poly) -> Poly:
        return self.mul(a, a)

    def pow(self, a: Poly, e: int) -> Poly:
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    # ---- division --------------------------------------------------------------
    def divmod(self, a: Poly, b: Poly) -> Tuple[Poly, Poly]:
        if not b:
            raise DivisionByZero("polynomial division by zero")
        if len(a) < len(b):
            return (), a
        db = len(b) - 1
        inv = self.F.inv_t[b[-1]]
        if len(b) == 1:
            return self.scale(inv, a), ()
        if len(a) >= DIV_NUMPY_THRESHOLD and len(b) >= 8:
            return self._divmod_np(a, b, inv)
        mt, st = self.F.mul_t, self.F.sub_t
        r = list(a)
        q = [0] * (len(a) - db)
        nz = [(j, y) for j, y in enumerate(b) if y]
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = mt[c][inv]
                q[k - db] = c
                row = mt[c]
                base = k - db
                for j, y in nz:
                    r[base + j] = st[r[base + j]][row[y]]
        return trim(q), trim(r[:db])

    def _divmod_np(self, a: Poly, b: Poly, inv: int) -> Tuple[Poly, Poly]:
        F = self.F
        db = len(b) - 1
        r = np.asarray(a, dtype=np.int64).copy()
        bn = np.asarray(b, dtype=np.int64)
        q = [0] * (len(a) - db)
        mul_np, sub_np, mt = F.mul_np, F.sub_np, F.mul_t
        for k in range(len(a) - 1, db - 1, -1):
            c = int(r[k])
            if c:
                c = mt[c][inv]
                q[k - db] = c
                seg = r[k - db:k + 1]
                r[k - db:k + 1] = sub_np[seg, mul_np[c][bn]]
        return trim(q), trim(r[:db].tolist())

    def mod(self, a: Poly, b: Poly) -> Poly:
        return self.divmod(a, b)[1]

    def div_exact(self, a: Poly, b: Poly) -> Poly:
        q, r = self.divmod(a, b)
        if r:
            raise InternalCheckError("inexact polynomial division")
        return q

    def monic(self, a: Poly) -> Poly:
        if not a or a[-1] == 1:
            return a
        return self.scale(self.F.inv_t[a[-1]], a)

    def gcd(self, a: Poly, b: Poly) -> Poly:
        """Monic gcd (gcd(0, 0) = 0)."""
        if len(a) < len(b):
            a, b = b, a
        while b:
            if len(b) == 1:
                return self.one
            a, b = b, self.mod(a, b)
        return self.monic(a)

    # ---- evaluation and substitution ------------------------------------------
    def eval(self, a: Poly, x: int) -> int:
        mt, at = self.F.mul_t, self.F.add_t
        acc = 0
        for c in reversed(a):
            acc = at[mt[acc][x]][c]
        return acc

    def spread(self, a: Poly, k: int) -> Poly:
        """a(theta) -> a(theta**k); coefficients are untouched."""
        if k == 1 or len(a) <= 1:
            return a
        res = [0] * ((len(a) - 1) * k + 1)
        for i, c in enumerate(a):
            res[i * k] = c
        return tuple(res)

    def unspread(self, a: Poly, k: int) -> Poly:
        """Inverse of spread; raises ValueError when a is not supported on multiples of k."""
        for i, c in enumerate(a):
            if c and i % k:
                raise ValueError("polynomial is not a polynomial in theta**k")
        return trim(a[::k])

    def format(self, a: Poly, var: str = "θ") -> str:
        if not a:
            return "0"
        F = self.F
        terms: List[str] = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            cs = F.format(c)
            if F.r > 1 and "+" in cs:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{cs}{mono}")
        return " + ".join(terms)
