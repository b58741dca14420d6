"""
TauPoly
-------
Polynomials in tau with n x n matrix coefficients over K, multiplied with the
twisting rule tau*M = M^(1)*tau, i.e. (AB)_k = sum_{i+j=k} A_i B_j^(i).
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from src.fields import matrix
from src.fields.function_field import KContext, KElem
from src.fields.matrix import Mat


@dataclass(frozen=True)
class TauPoly:
    ctx: KContext
    n: int
    coeffs: Tuple[Mat, ...]

    @classmethod
    def make(cls, ctx: KContext, n: int, coeffs: Sequence[Mat]) -> "TauPoly":
        coeffs = list(coeffs)
        while coeffs and matrix.mat_is_zero(coeffs[-1]):
            coeffs.pop()
        return cls(ctx, n, tuple(coeffs))

    @classmethod
    def constant(cls, ctx: KContext, M: Mat) -> "TauPoly":
        return cls.make(ctx, len(M), [M])

    @classmethod
    def scalar(cls, ctx: KContext, c: KElem, n: int) -> "TauPoly":
        return cls.make(ctx, n, [matrix.scalar(ctx, c, n)])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Mat:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return matrix.zeros(self.ctx, self.n)

    def __add__(self, other: "TauPoly") -> "TauPoly":
        k = max(len(self.coeffs), len(other.coeffs))
        return TauPoly.make(self.ctx, self.n,
                            [matrix.mat_add(self.coefficient(i), other.coefficient(i)) for i in range(k)])

    def __neg__(self) -> "TauPoly":
        return TauPoly(self.ctx, self.n, tuple(matrix.mat_neg(c) for c in self.coeffs))

    def __sub__(self, other: "TauPoly") -> "TauPoly":
        return self + (-other)

    def __mul__(self, other: "TauPoly") -> "TauPoly":
        if self.is_zero() or other.is_zero():
            return TauPoly(self.ctx, self.n, ())
        out: List[Mat] = [matrix.zeros(self.ctx, self.n) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, A in enumerate(self.coeffs):
            if matrix.mat_is_zero(A):
                continue
            for j, B in enumerate(other.coeffs):
                if matrix.mat_is_zero(B):
                    continue
                out[i + j] = matrix.mat_add(out[i + j], matrix.mat_mul(A, matrix.mat_twist(B, i)))
        return TauPoly.make(self.ctx, self.n, out)

    def __pow__(self, e: int) -> "TauPoly":
        result = TauPoly.constant(self.ctx, matrix.identity(self.ctx, self.n))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale_fq(self, c: int) -> "TauPoly":
        """Multiply by an F_q constant, which commutes with tau."""
        k = self.ctx.const(c)
        return TauPoly.make(self.ctx, self.n, [matrix.mat_scale(k, M) for M in self.coeffs])

    def to_json(self) -> List[List[List[Dict[str, Any]]]]:
        return [[[x.to_json() for x in row] for row in M] for M in self.coeffs]
