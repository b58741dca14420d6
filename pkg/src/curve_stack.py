"""
CurveStack
----------
The chain every command walks: curve context, K(t, y), the Drinfeld divisor
and shtuka function, the tensor basis for n and the Anderson module. Each
stage is built on first use and kept.
"""

from __future__ import annotations
import logging
from typing import Optional

from src.anderson.anderson_module import AndersonModule, build_module
from src.curve.curve_function import CurveRing
from src.curve.points import class_number
from src.fields.function_field import KContext
from src.shtuka.shtuka_function import ShtukaData, find_V, shtuka
from src.shtuka.tensor_basis import TensorBasis

logger = logging.getLogger(__name__)


class CurveStack:
    def __init__(self, ctx: KContext, n: int = 1, check: bool = True):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.ctx, self.n, self.check = ctx, n, check
        self.ring = CurveRing(ctx)
        self._h: Optional[int] = None
        self._S: Optional[ShtukaData] = None
        self._tb: Optional[TensorBasis] = None
        self._mod: Optional[AndersonModule] = None

    @property
    def h(self) -> int:
        if self._h is None:
            self._h = class_number(self.ctx)
        return self._h

    @property
    def S(self) -> ShtukaData:
        if self._S is None:
            V = find_V(self.ctx)
            self._S = shtuka(self.ring, V, check=self.check)
        return self._S

    @property
    def tb(self) -> TensorBasis:
        if self._tb is None:
            self._tb = TensorBasis(self.ring, self.S, self.n, check=self.check)
        return self._tb

    @property
    def mod(self) -> AndersonModule:
        if self._mod is None:
            self._mod = build_module(self.tb, check=self.check)
        return self._mod

    def zeta_supported(self) -> bool:
        return self.h == 1 and self.n <= self.ctx.q - 1
