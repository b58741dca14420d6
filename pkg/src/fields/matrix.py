"""
Small dense matrices over K (tuples of tuples of KElem) and an exact
Gauss-Jordan solver for overdetermined consistent systems.
"""

from __future__ import annotations
from typing import List, Sequence, Tuple

from src.errors import DivisionByZero, InternalCheckError
from src.fields.function_field import KContext, KElem

Mat = Tuple[Tuple[KElem, ...], ...]


def zeros(ctx: KContext, n: int, m: int = None) -> Mat:
    m = n if m is None else m
    return tuple(tuple(ctx.zero for _ in range(m)) for _ in range(n))


def identity(ctx: KContext, n: int) -> Mat:
    return tuple(tuple(ctx.one if i == j else ctx.zero for j in range(n)) for i in range(n))


def scalar(ctx: KContext, c: KElem, n: int) -> Mat:
    return tuple(tuple(c if i == j else ctx.zero for j in range(n)) for i in range(n))


def diag(ctx: KContext, entries: Sequence[KElem]) -> Mat:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else ctx.zero for j in range(n)) for i in range(n))


def from_rows(rows: Sequence[Sequence[KElem]]) -> Mat:
    return tuple(tuple(r) for r in rows)


def mat_add(A: Mat, B: Mat) -> Mat:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A: Mat, B: Mat) -> Mat:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_neg(A: Mat) -> Mat:
    return tuple(tuple(-a for a in r) for r in A)


def mat_scale(c: KElem, A: Mat) -> Mat:
    return tuple(tuple(c * a for a in r) for r in A)


def mat_mul(A: Mat, B: Mat) -> Mat:
    ctx_zero = A[0][0].ctx.zero
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            acc = ctx_zero
            for a, b in zip(row, col):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_twist(A: Mat, k: int) -> Mat:
    if k == 0:
        return A
    return tuple(tuple(a.twist(k) for a in r) for r in A)


def mat_is_zero(A: Mat) -> bool:
    return all(a.is_zero() for r in A for a in r)


def mat_pow(ctx: KContext, A: Mat, e: int) -> Mat:
    result, base = identity(ctx, len(A)), A
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def diag_inverse(A: Mat) -> Mat:
    n = len(A)
    for i in range(n):
        for j in range(n):
            if i != j and not A[i][j].is_zero():
                raise InternalCheckError("matrix is not diagonal")
    if any(A[i][i].is_zero() for i in range(n)):
        raise DivisionByZero("singular diagonal matrix")
    zero = A[0][0].ctx.zero
    return tuple(tuple(A[i][i].inv() if i == j else zero for j in range(n)) for i in range(n))


def column(A: Mat, j: int) -> Tuple[KElem, ...]:
    return tuple(r[j] for r in A)


def solve(ctx: KContext, columns: Sequence[Sequence[KElem]], rhs: Sequence[KElem]) -> List[KElem]:
    """
    Unique x with sum_j x_j * columns[j] == rhs.

    Raises InternalCheckError when the system is inconsistent or underdetermined.
    """
    m = len(columns)
    rows = [[columns[j][i] for j in range(m)] + [rhs[i]] for i in range(len(rhs))]
    pivots: List[int] = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            raise InternalCheckError("linear system is underdetermined")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if not rows[i][m].is_zero():
            raise InternalCheckError("linear system is inconsistent")
    return [rows[i][m] for i in range(m)]
