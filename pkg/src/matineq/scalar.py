"""Scalar inequalities for concave f with f(0) = 0.

Every check returns its two sides oriented so that ``lhs <= rhs`` is the
claim (or a :class:`TwoSidedBound` for the sandwich).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .concave import ConcaveFn
from .errors import DegenerateInputError, DomainError

SPECHT_TAYLOR_RADIUS = 1e-4


def _check_point(a: float, b: float, t: float | None = None) -> None:
    if not (a >= 0 and b >= 0) or not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"a, b must be finite and >= 0, got a={a}, b={b}")
    if t is not None and not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")


@dataclass(frozen=True)
class TwoSidedBound:
    lower: float
    middle: float
    upper: float

    def holds(self, atol: float = 1e-12) -> bool:
        return self.lower <= self.middle + atol and self.middle <= self.upper + atol


def refined_jensen_gap(f: ConcaveFn, a: float, b: float, t: float) -> tuple[float, float]:
    """``(1-t) f(a) + t f(b) <= f((1-t)a + tb) + 2r((f(a)+f(b))/2 - f((a+b)/2))``, r = min(t, 1-t)."""
    _check_point(a, b, t)
    fa, fb = f(a), f(b)
    r = min(t, 1.0 - t)
    lhs = (1.0 - t) * fa + t * fb
    rhs = f((1.0 - t) * a + t * b) + 2.0 * r * ((fa + fb) / 2.0 - f((a + b) / 2.0))
    return lhs, rhs


def reversed_jensen_gap(f: ConcaveFn, a: float, b: float, t: float) -> tuple[float, float]:
    """``f((1-t)a + tb) <= (1-t) f(a) + t f(b) + 2R(f((a+b)/2) - (f(a)+f(b))/2)``, R = max(t, 1-t)."""
    _check_point(a, b, t)
    fa, fb = f(a), f(b)
    R = max(t, 1.0 - t)
    lhs = f((1.0 - t) * a + t * b)
    rhs = (1.0 - t) * fa + t * fb + 2.0 * R * (f((a + b) / 2.0) - (fa + fb) / 2.0)
    return lhs, rhs


def midpoint_excess(f: ConcaveFn, s: float) -> float:
    """``f(s)/2 - f(s/2)``; nonpositive for concave f with f(0) = 0."""
    return f(s) / 2.0 - f(s / 2.0)


def theorem1_bounds(f: ConcaveFn, a: float, b: float) -> TwoSidedBound:
    """Two-sided bound on the subadditivity defect ``f(a+b) - f(a) - f(b)``.

    With ``g = f(a+b)/2 - f((a+b)/2)`` and ``d = |a-b|/(a+b)``:
    ``2(1+d) g <= f(a+b) - f(a) - f(b) <= 2(1-d) g``. Both ends coincide at a = b.
    """
    _check_point(a, b)
    s = a + b
    if s == 0:
        raise DegenerateInputError("a + b must be positive")
    d = abs(a - b) / s
    gap = midpoint_excess(f, s)
    middle = f(s) - (f(a) + f(b))
    return TwoSidedBound(2.0 * (1.0 + d) * gap, middle, 2.0 * (1.0 - d) * gap)


def remark_chain(f: ConcaveFn, a: float, b: float) -> tuple[float, float, float]:
    """``f(a+b)/2 <= (f(a)+f(b))/2 <= f((a+b)/2)`` returned as the three terms."""
    _check_point(a, b)
    return f(a + b) / 2.0, (f(a) + f(b)) / 2.0, f((a + b) / 2.0)


def midpoint_corollary_check(f: ConcaveFn, a: float, b: float) -> tuple[float, float]:
    """``f((a+b)/2) - (f(a)+f(b))/2 <= |a-b|/(a+b) * (f((a+b)/2) - f(a+b)/2)``."""
    _check_point(a, b)
    s = a + b
    if s == 0:
        raise DegenerateInputError("a + b must be positive")
    mid = f(s / 2.0)
    lhs = mid - (f(a) + f(b)) / 2.0
    rhs = abs(a - b) / s * (mid - f(s) / 2.0)
    return lhs, rhs


def log_specht_ratio(h: float) -> float:
    """``log S(h)`` with ``S(h) = (h-1) h^{1/(h-1)} / (e log h)`` and S(1) = 1."""
    if not h > 0 or not math.isfinite(h):
        raise DomainError(f"Specht ratio needs h > 0, got {h}")
    if h < 1.0:
        h = 1.0 / h
    x = h - 1.0
    if x < SPECHT_TAYLOR_RADIUS:
        # S(1+x) = 1 + x^2/8 - x^3/8 + O(x^4); removable singularity at h = 1.
        return math.log1p(x * x / 8.0 - x ** 3 / 8.0)
    logh = math.log(h)
    return math.log(x) + logh / x - 1.0 - math.log(logh)


def specht_ratio(h: float) -> float:
    """Specht's ratio; S(h) = S(1/h) >= 1 and (a+b)/2 <= S(M/m) sqrt(ab) on [m, M]."""
    return math.exp(log_specht_ratio(h))
