"""Determinant inequalities driven by concavity of ``det^{1/n}`` and ``log det``.

Comparisons between products or powers of determinants are made in the log
domain (``log_domain=True`` on the result); comparisons between sums of
``det^{1/n}`` terms are made directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from .errors import DegenerateInputError, DimensionError, DomainError, SingularMatrixError
from .linalg import as_hermitian, eigvalsh_desc, log_det, pd_threshold, solve_trace
from .sampling import ginibre
from .scalar import log_specht_ratio

DEFAULT_T_SEQUENCE = (1e-1, 1e-2, 1e-3, 1e-4)
TRACE_EPSILONS = (1e-1, 1e-3, 1e-6)


@dataclass(frozen=True)
class DetBoundResult:
    """One evaluated determinant inequality.

    ``margin`` is oriented so that a nonnegative value means the inequality
    holds; ``rhs - lhs`` or ``lhs - rhs`` depending on its direction.
    """

    lhs: float
    rhs: float
    margin: float
    inequality_id: str
    log_domain: bool = False
    details: Mapping[str, float] = field(default_factory=dict)

    def holds(self, rtol: float = 1e-9) -> bool:
        return self.margin >= -rtol * (1.0 + abs(self.lhs) + abs(self.rhs))


def _le(lhs, rhs, ident, log_domain=False, **details) -> DetBoundResult:
    return DetBoundResult(float(lhs), float(rhs), float(rhs - lhs), ident, log_domain, details)


def _ge(lhs, rhs, ident, log_domain=False, **details) -> DetBoundResult:
    return DetBoundResult(float(lhs), float(rhs), float(lhs - rhs), ident, log_domain, details)


def _pd(M: ArrayLike, name: str = "matrix") -> np.ndarray:
    H = as_hermitian(M)
    lam = eigvalsh_desc(H)
    if not lam[-1] > pd_threshold(H, lam):
        raise SingularMatrixError(f"{name} is not positive definite")
    return H


def _pair(A: ArrayLike, B: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    A = _pd(A, "A")
    B = _pd(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch {A.shape} vs {B.shape}")
    return A, B


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return t


def detroot(M: ArrayLike) -> float:
    """``det(M)^{1/n}`` via ``exp(log det M / n)``."""
    H = as_hermitian(M)
    return math.exp(log_det(H) / H.shape[0])


def _detroot_pd(H: np.ndarray) -> float:
    return math.exp(log_det(H) / H.shape[0])


def detroot_concavity_check(A: ArrayLike, B: ArrayLike, t: float) -> DetBoundResult:
    """``(1-t) det^{1/n} A + t det^{1/n} B <= det^{1/n}((1-t)A + tB)``."""
    A, B = _pair(A, B)
    t = _check_t(t)
    lhs = (1.0 - t) * _detroot_pd(A) + t * _detroot_pd(B)
    rhs = _detroot_pd(as_hermitian((1.0 - t) * A + t * B))
    return _le(lhs, rhs, "det-concave")


def logdet_concavity_check(A: ArrayLike, B: ArrayLike, t: float) -> DetBoundResult:
    """``det((1-t)A + tB) >= det^{1-t} A det^t B``, compared as logs."""
    A, B = _pair(A, B)
    t = _check_t(t)
    lhs = log_det(as_hermitian((1.0 - t) * A + t * B))
    rhs = (1.0 - t) * log_det(A) + t * log_det(B)
    return _ge(lhs, rhs, "logdet-concave", log_domain=True)


def reversed_logdet_jensen_check(A: ArrayLike, B: ArrayLike, t: float) -> DetBoundResult:
    """Reverse Jensen for ``log det`` with weight ``2R``, R = max(t, 1-t)."""
    A, B = _pair(A, B)
    t = _check_t(t)
    R = max(t, 1.0 - t)
    la, lb = log_det(A), log_det(B)
    lmid = log_det(as_hermitian((A + B) / 2.0))
    lhs = log_det(as_hermitian((1.0 - t) * A + t * B))
    rhs = (1.0 - t) * la + t * lb + 2.0 * R * (lmid - (la + lb) / 2.0)
    return _le(lhs, rhs, "logdet-rev-jensen", log_domain=True)


def _relative_eigenvalues(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    # A^{-1/2} B A^{-1/2} is similar to M M* with M = L_A^{-1} L_B, so its
    # eigenvalues are squared singular values: nonnegative even when A or B
    # is close to singular.
    try:
        la = np.linalg.cholesky(A)
        lb = np.linalg.cholesky(B)
    except np.linalg.LinAlgError:
        raise SingularMatrixError("Cholesky factorization failed") from None
    M = scipy.linalg.solve_triangular(la, lb, lower=True)
    return np.linalg.svd(M, compute_uv=False) ** 2


def relative_eigenvalues(A: ArrayLike, B: ArrayLike) -> np.ndarray:
    """Eigenvalues of ``A^{-1/2} B A^{-1/2}`` (the pencil ``B v = lambda A v``), descending."""
    A, B = _pair(A, B)
    return _relative_eigenvalues(A, B)


def specht_complement_check(A: ArrayLike, B: ArrayLike, t: float) -> DetBoundResult:
    """``det((1-t)A + tB) <= (prod S(lambda_i))^{2R} det^{1-t} A det^t B``.

    ``lambda_i`` are the eigenvalues of ``A^{-1/2} B A^{-1/2}`` and S is
    Specht's ratio.
    """
    A, B = _pair(A, B)
    t = _check_t(t)
    R = max(t, 1.0 - t)
    lam = _relative_eigenvalues(A, B)
    if not np.all(lam > 0):
        raise SingularMatrixError("relative eigenvalues must be positive")
    log_s = sum(log_specht_ratio(float(x)) for x in lam)
    lhs = log_det(as_hermitian((1.0 - t) * A + t * B))
    rhs = 2.0 * R * log_s + (1.0 - t) * log_det(A) + t * log_det(B)
    return _le(lhs, rhs, "specht-complement", log_domain=True, log_specht_product=log_s)


def reverse_minkowski_check(A: ArrayLike, B: ArrayLike, t: float) -> DetBoundResult:
    """``det^{1/n}(A+B) <= det^{1/n}A + det^{1/n}B + R/(t(1-t)) * excess`` for 0 < t < 1.

    ``excess = det^{1/n}(tA + (1-t)B) - t det^{1/n}A - (1-t) det^{1/n}B >= 0``.
    """
    A, B = _pair(A, B)
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DegenerateInputError(f"t must lie strictly inside (0, 1), got {t}")
    R = max(t, 1.0 - t)
    da, db = _detroot_pd(A), _detroot_pd(B)
    excess = _detroot_pd(as_hermitian(t * A + (1.0 - t) * B)) - t * da - (1.0 - t) * db
    correction = R / (t * (1.0 - t)) * excess
    lhs = _detroot_pd(as_hermitian(A + B))
    return _le(lhs, da + db + correction, "rev-minkowski", correction=correction)


def _trace_bound(da: float, db: float, A: np.ndarray, B: np.ndarray) -> tuple[float, float]:
    n = A.shape[0]
    via_b = db * (1.0 + solve_trace(A, B) / n)
    via_a = da * (1.0 + solve_trace(B, A) / n)
    return via_b, via_a


def trace_upper_bound(A: ArrayLike, B: ArrayLike) -> tuple[float, float]:
    """``(det^{1/n}B (1 + tr(AB^{-1})/n), det^{1/n}A (1 + tr(BA^{-1})/n))``.

    Both are upper bounds for ``det^{1/n}(A + B)``.
    """
    A, B = _pair(A, B)
    return _trace_bound(_detroot_pd(A), _detroot_pd(B), A, B)


def trace_upper_bound_check(A: ArrayLike, B: ArrayLike) -> list[DetBoundResult]:
    A, B = _pair(A, B)
    lhs = _detroot_pd(as_hermitian(A + B))
    via_b, via_a = _trace_bound(_detroot_pd(A), _detroot_pd(B), A, B)
    return [_le(lhs, via_b, "trace-ub"), _le(lhs, via_a, "trace-ub")]


def double_sided_check(A: ArrayLike, B: ArrayLike) -> tuple[float, float, float]:
    """``det^{1/n}B (det^{1/n}(AB^{-1}) + 1) <= det^{1/n}(A+B) <= det^{1/n}B (tr(AB^{-1})/n + 1)``.

    Returns ``(lower, middle, upper)``.
    """
    A, B = _pair(A, B)
    n = A.shape[0]
    la, lb = log_det(A), log_det(B)
    db = math.exp(lb / n)
    lower = db * (math.exp((la - lb) / n) + 1.0)
    middle = _detroot_pd(as_hermitian(A + B))
    upper = db * (solve_trace(A, B) / n + 1.0)
    return lower, middle, upper


def double_sided_results(A: ArrayLike, B: ArrayLike) -> list[DetBoundResult]:
    """The two halves of the double-sided bound plus ``det^{1/n}(AB^{-1}) <= tr(AB^{-1})/n``."""
    A, B = _pair(A, B)
    n = A.shape[0]
    lower, middle, upper = double_sided_check(A, B)
    ratio_root = math.exp((log_det(A) - log_det(B)) / n)
    return [
        _le(lower, middle, "double-sided"),
        _le(middle, upper, "double-sided"),
        _le(ratio_root, solve_trace(A, B) / n, "double-sided"),
    ]


def _random_unit_det(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    G = ginibre(rng, n * count, n).reshape(count, n, n)
    Bs = G @ np.conj(np.swapaxes(G, 1, 2)) + 1e-8 * n * np.eye(n)
    _, logabs = np.linalg.slogdet(Bs)
    return Bs / np.exp(logabs / n)[:, None, None]


def variational_detroot_check(
    A: ArrayLike, trials: int = 1000, rng: np.random.Generator | int | None = None
) -> DetBoundResult:
    """``det^{1/n} A = min { tr(AB)/n : B > 0, det B = 1 }``.

    The candidate minimizer ``B* = det^{1/n}(A) A^{-1}`` is evaluated
    (``details`` carry ``det B*`` and ``tr(A B*)/n``) and ``trials`` random
    det-one matrices probe the minimum. ``rhs`` is the smallest sampled value.
    """
    A = _pd(A, "A")
    n = A.shape[0]
    if trials < 1:
        raise DomainError("trials must be >= 1")
    rng = np.random.default_rng(rng)
    lam = np.linalg.eigvalsh(A)
    d = math.exp(float(np.mean(np.log(lam))))
    # B* = d A^{-1} taken in A's eigenbasis: a matrix-level inverse would
    # carry a relative error of order cond(A) * eps into det B*.
    mu = d / lam
    bstar_det = math.exp(float(np.sum(np.log(mu))))
    bstar_value = float(lam @ mu) / n
    Bs = _random_unit_det(rng, n, trials)
    values = np.einsum("ij,kji->k", A, Bs).real / n
    sampled_min = float(values.min())
    return _le(d, sampled_min, "variational-detroot", bstar_det=bstar_det, bstar_value=bstar_value)


@dataclass(frozen=True)
class TLimitResult:
    """Finite-t upper bounds for ``det^{1/n}(A+B)`` approaching the trace bound as t -> 0+."""

    t: np.ndarray
    values: np.ndarray
    limit: float
    target: float

    @property
    def errors(self) -> np.ndarray:
        return np.abs(self.values - self.limit)

    @property
    def strictly_decreasing(self) -> bool:
        e = self.errors
        return bool(np.all(np.diff(e) < 0))

    def upper_bound_margins(self) -> np.ndarray:
        """``value(t) - det^{1/n}(A+B)`` for each t."""
        return self.values - self.target


def tlimit_value(A: np.ndarray, B: np.ndarray, t: float, db: float | None = None) -> float:
    """``det^{1/n}B + (det^{1/n}(tA + (1-t)B) - (1-t) det^{1/n}B) / t``."""
    if db is None:
        db = _detroot_pd(B)
    return db + (_detroot_pd(as_hermitian(t * A + (1.0 - t) * B)) - (1.0 - t) * db) / t


def tlimit_convergence_check(
    A: ArrayLike, B: ArrayLike, t_sequence: Sequence[float] = DEFAULT_T_SEQUENCE
) -> TLimitResult:
    """Evaluate the reversed Minkowski bound along t -> 0+ (where R = 1 - t).

    Each t must lie in (0, 1/2] so the bound coincides with the reversed
    Minkowski right side; the sequence must be strictly decreasing.
    """
    A, B = _pair(A, B)
    ts = np.asarray(list(t_sequence), dtype=float)
    if ts.size == 0 or np.any(ts <= 0) or np.any(ts > 0.5):
        raise DomainError("t values must lie in (0, 1/2]")
    if np.any(np.diff(ts) >= 0):
        raise DomainError("t sequence must be strictly decreasing")
    n = A.shape[0]
    db = _detroot_pd(B)
    values = np.array([tlimit_value(A, B, float(t), db) for t in ts])
    limit = db * (1.0 + solve_trace(A, B) / n)
    return TLimitResult(ts, values, limit, _detroot_pd(as_hermitian(A + B)))


def detroot_trace_check(A: ArrayLike) -> DetBoundResult:
    """``det^{1/n} A <= tr(A)/n``, also through the trace bound with B = eps I.

    ``details`` map ``eps_bound:<eps>`` to ``eps (1 + tr A / (n eps))`` and
    ``eps_lhs:<eps>`` to ``det^{1/n}(A + eps I)``.
    """
    A = _pd(A, "A")
    n = A.shape[0]
    tr = float(np.trace(A).real)
    details = {}
    for eps in TRACE_EPSILONS:
        details[f"eps_bound:{eps!r}"] = eps * (1.0 + tr / (n * eps))
        details[f"eps_lhs:{eps!r}"] = _detroot_pd(as_hermitian(A + eps * np.eye(n)))
    return DetBoundResult(
        _detroot_pd(A), tr / n, tr / n - _detroot_pd(A), "detroot-trace", False, details
    )


def minkowski_check(A: ArrayLike, B: ArrayLike) -> DetBoundResult:
    """``det^{1/n}(A+B) >= det^{1/n}A + det^{1/n}B``."""
    A, B = _pair(A, B)
    lhs = _detroot_pd(as_hermitian(A + B))
    return _ge(lhs, _detroot_pd(A) + _detroot_pd(B), "minkowski")
