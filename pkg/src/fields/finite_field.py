"""
FiniteField
-----------
F_q = F_p[x]/(modulus) with elements encoded as integer codes
code = sum(digit_i * p**i) (polynomial basis, little-endian digits).
All arithmetic goes through precomputed tables, both as Python lists for
scalar work and as numpy arrays for vectorized polynomial kernels.
"""

from __future__ import annotations
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np

from src.errors import DivisionByZero, FieldError, RangeUnsupported

MAX_Q = 256

# Shipped moduli (little-endian, monic) for the small non-prime fields.
DEFAULT_MODULI: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---- tiny F_p[x] helpers (only used to validate / search moduli) -------------
def _fp_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    r = list(a)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        c = (r[k] * inv) % p
        if c:
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return _fp_trim(r[:db])


def _monic_polys(p: int, d: int):
    for code in range(p ** d):
        digits = [(code // p ** i) % p for i in range(d)]
        yield digits + [1]


def is_irreducible_fp(poly: Sequence[int], p: int) -> bool:
    d = len(poly) - 1
    if d < 1 or poly[-1] % p != 1:
        return False
    for e in range(1, d // 2 + 1):
        for cand in _monic_polys(p, e):
            if not _fp_mod(poly, cand, p):
                return False
    return True


def default_modulus(p: int, r: int) -> Tuple[int, ...]:
    if (p, r) in DEFAULT_MODULI:
        return DEFAULT_MODULI[(p, r)]
    for cand in _monic_polys(p, r):
        if is_irreducible_fp(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {r} over F_{p}")


class FiniteField:
    """
    F_q with q = p**r <= 256.

    Attributes:
        p, r, q: characteristic, extension degree and order.
        modulus: little-endian monic modulus (None when r == 1).
        add_t, sub_t, mul_t: q x q Python tables; neg_t, inv_t: length-q lists.
        add_np, sub_np, mul_np, digits_np: numpy versions for vector kernels.
    """

    def __init__(self, p: int, r: int = 1, modulus: Optional[Sequence[int]] = None):
        if not _is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if r < 1:
            raise FieldError("extension degree r must be >= 1")
        if p ** r > MAX_Q:
            raise RangeUnsupported(f"q = {p}^{r} exceeds {MAX_Q}")
        self.p, self.r, self.q = p, r, p ** r
        if r == 1:
            self.modulus = None
        else:
            mod = tuple(int(c) % p for c in (modulus if modulus is not None else default_modulus(p, r)))
            if len(mod) != r + 1 or not is_irreducible_fp(mod, p):
                raise FieldError(f"modulus {list(mod)} is not a monic irreducible of degree {r}")
            self.modulus = mod
        self._build_tables()

    # ---- table construction --------------------------------------------------
    def _build_tables(self) -> None:
        p, r, q = self.p, self.r, self.q
        powers = np.array([p ** i for i in range(r)], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        digits = np.stack([(codes // p ** i) % p for i in range(r)], axis=1)
        self.digits_np = digits
        self.powers_np = powers

        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ powers
        sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ powers
        self.add_np = add.astype(np.int64)
        self.sub_np = sub.astype(np.int64)
        self.neg_np = ((-digits) % p) @ powers

        gen, exp_t = self._find_generator()
        log_t = np.zeros(q, dtype=np.int64)
        for i, v in enumerate(exp_t):
            log_t[v] = i
        exp_np = np.array(exp_t, dtype=np.int64)
        mul = exp_np[(log_t[:, None] + log_t[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self.mul_np = mul
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp_np[(-log_t[1:]) % (q - 1)]
        self.inv_np = inv
        self.generator = gen

        self.add_t: List[List[int]] = self.add_np.tolist()
        self.sub_t: List[List[int]] = self.sub_np.tolist()
        self.mul_t: List[List[int]] = self.mul_np.tolist()
        self.neg_t: List[int] = self.neg_np.tolist()
        self.inv_t: List[int] = self.inv_np.tolist()

    def _slow_mul(self, a: int, b: int) -> int:
        p, r = self.p, self.r
        da = self.to_digits(a)
        db = self.to_digits(b)
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        if r > 1:
            prod = _fp_mod(prod, self.modulus, p) if any(prod) else []
        prod = list(prod) + [0] * (r - len(prod))
        return self.from_digits(prod[:r])

    def _find_generator(self) -> Tuple[int, List[int]]:
        q = self.q
        if q == 2:
            return 1, [1]
        for g in range(2, q):
            seq = [1]
            x = g
            while x != 1 and len(seq) < q:
                seq.append(x)
                x = self._slow_mul(x, g)
            if len(seq) == q - 1 and x == 1:
                return g, seq
        raise FieldError("multiplicative group has no generator; modulus is not irreducible")

    # ---- encoding ------------------------------------------------------------
    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) > self.r:
            raise FieldError(f"FqElem must have at most {self.r} digits")
        return sum((int(d) % self.p) * self.p ** i for i, d in enumerate(digits))

    def to_digits(self, code: int) -> List[int]:
        return [(code // self.p ** i) % self.p for i in range(self.r)]

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    # ---- scalar arithmetic -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.add_t[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.sub_t[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a][b]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in F_q")
        return self.inv_t[a]

    def pow(self, a: int, e: int) -> int:
        result, base = 1, a
        if e < 0:
            base, e = self.inv(a), -e
        while e:
            if e & 1:
                result = self.mul_t[result][base]
            base = self.mul_t[base][base]
            e >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)

    def format(self, code: int) -> str:
        if self.r == 1:
            return str(code)
        terms = []
        for i, d in enumerate(self.to_digits(code)):
            if d == 0:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if not mono:
                terms.append(str(d))
            else:
                terms.append(mono if d == 1 else f"{d}{mono}")
        return "+".join(reversed(terms)) or "0"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus))

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, r={self.r}, modulus={self.modulus})"
