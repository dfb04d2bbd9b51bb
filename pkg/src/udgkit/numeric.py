"""Scalar backends: IEEE doubles or a private multiprecision context.

Constructions are written against the small interface below so the same code
runs in either arithmetic.  The caterpillar pipelines need margins far below
double resolution and therefore default to the multiprecision backend.
"""

from __future__ import annotations

import math
from typing import Any

import mpmath
from mpmath.ctx_mp import MPContext

DEFAULT_DPS = 80


class FloatBackend:
    name = "float"
    dps = None
    pi = math.pi

    def num(self, x: Any) -> float:
        return float(x)

    def sqrt(self, x: Any) -> float:
        return math.sqrt(x)

    def sin(self, x: Any) -> float:
        return math.sin(x)

    def cos(self, x: Any) -> float:
        return math.cos(x)

    def atan2(self, y: Any, x: Any) -> float:
        return math.atan2(y, x)

    def hypot(self, x: Any, y: Any) -> float:
        return math.hypot(x, y)

    def tolerance(self) -> float:
        """Scale at which two computed values count as equal."""
        return 1e-12

    def __repr__(self) -> str:
        return "FloatBackend()"


class MpBackend:
    """Multiprecision arithmetic on a private context (global mp state untouched)."""

    name = "mp"

    def __init__(self, dps: int = DEFAULT_DPS) -> None:
        if dps < 20:
            raise ValueError("multiprecision backend needs at least 20 digits")
        self.ctx = MPContext()
        self.ctx.dps = dps
        self.dps = dps
        self.pi = self.ctx.pi

    def num(self, x: Any):
        if isinstance(x, str):
            return self.ctx.mpf(x)
        return self.ctx.mpf(x)

    def sqrt(self, x: Any):
        return self.ctx.sqrt(x)

    def sin(self, x: Any):
        return self.ctx.sin(x)

    def cos(self, x: Any):
        return self.ctx.cos(x)

    def atan2(self, y: Any, x: Any):
        return self.ctx.atan2(y, x)

    def hypot(self, x: Any, y: Any):
        return self.ctx.hypot(x, y)

    def tolerance(self):
        return self.ctx.mpf(10) ** (-(self.dps // 2))

    def __repr__(self) -> str:
        return f"MpBackend(dps={self.dps})"


Backend = Any  # FloatBackend | MpBackend


def float_backend() -> FloatBackend:
    return FloatBackend()


def mp_backend(dps: int = DEFAULT_DPS) -> MpBackend:
    return MpBackend(dps)


def is_mp(x: Any) -> bool:
    return isinstance(x, mpmath.mpf) or type(x).__name__ == "mpf"


def backend_for(*values: Any) -> Backend:
    """Backend able to hold ``values`` without losing digits."""
    for v in values:
        if is_mp(v):
            return MpBackend(max(DEFAULT_DPS, _dps_of(v)))
    return FloatBackend()


def _dps_of(x: Any) -> int:
    ctx = getattr(x, "context", None)
    return int(getattr(ctx, "dps", DEFAULT_DPS))


def format_number(x: Any) -> str:
    """Exact-enough decimal text: 17 significant digits for doubles, full for mp."""
    if is_mp(x):
        return mpmath.nstr(x, _dps_of(x) + 3, strip_zeros=False)
    return format(float(x), ".17g")
