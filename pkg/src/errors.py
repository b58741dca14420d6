"""
Error hierarchy
---------------
Every failure raised by the library derives from DrinfeldError so the CLI and
the verify graph can catch one type and report it.
"""

from __future__ import annotations
from typing import Optional


class DrinfeldError(Exception):
    """Base class for all library errors."""


# ---- field kernel ------------------------------------------------------------
class FieldError(DrinfeldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class NotAPower(FieldError):
    """Raised by q-th root extraction when the input is not in K^q."""


class DegreeOfZero(FieldError):
    pass


# ---- curves ------------------------------------------------------------------
class CurveError(DrinfeldError):
    pass


class OffCurvePoint(CurveError):
    pass


class SingularCurve(CurveError):
    pass


class PoleError(DrinfeldError):
    def __init__(self, order: int, message: Optional[str] = None):
        self.order = order
        super().__init__(message or f"function has a pole of order {-order}")


class PrecisionError(DrinfeldError):
    pass


# ---- construction gates ------------------------------------------------------
class ClassNumberUnsupported(DrinfeldError):
    def __init__(self, h: int):
        self.h = h
        super().__init__(f"class number {h} != 1 is not supported")


class SearchExhausted(DrinfeldError):
    pass


class RangeUnsupported(DrinfeldError):
    pass


class InternalCheckError(DrinfeldError):
    """An identity that must hold by construction failed."""


class ExprSyntaxError(DrinfeldError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")
