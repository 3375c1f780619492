"""Forward and reversed subadditivity of concave matrix functions under norms.

The reversed bound uses the gap term

    gamma = 2 (1 + ||A - B|| / m) (||f((A+B)/2)|| - f(m) / 2),   m = ||(A+B)^{-1/2}||^{-2},

where ``||.||`` is the operator norm and ``m`` equals ``lambda_min(A + B)``.
Then ``||f(A) + f(B)|| <= gamma + ||f(A+B)||`` and, for every unitarily
invariant norm, ``|||f(A) + f(B)||| <= gamma |||I||| + |||f(A+B)|||``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .concave import ConcaveFn
from .errors import DegenerateInputError, DomainError, InvariantViolation, SingularMatrixError
from .linalg import (
    PSD_ATOL,
    apply_fn,
    as_hermitian,
    eigvalsh_desc,
    pd_threshold,
)
from .norms import NormSpec, identity_norm, norm_from_singular_values

__all__ = [
    "ForwardSubadditiveResult",
    "ReversedGapCertificate",
    "forward_subadditive_check",
    "inner_product_lower_bound_check",
    "concave_inner_product_check",
    "reversed_gap_gamma",
    "reversed_operator_norm_check",
    "reversed_ui_norm_check",
]


@dataclass(frozen=True)
class ForwardSubadditiveResult:
    """Ky-Fan k-norms of ``f(A) + f(B)`` (lhs) and ``f(A + B)`` (rhs), k = 1..n."""

    lhs: np.ndarray
    rhs: np.ndarray

    @property
    def margins(self) -> np.ndarray:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class ReversedGapCertificate:
    gamma: float
    lhs: float
    rhs: float
    norm_spec: NormSpec

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def holds(self, rtol: float = 1e-9) -> bool:
        return self.lhs <= self.rhs + rtol * (1.0 + abs(self.lhs) + abs(self.rhs))


def _psd_spectrum(M: np.ndarray, name: str) -> np.ndarray:
    lam = eigvalsh_desc(M)
    if lam[-1] < -PSD_ATOL * (1.0 + np.max(np.abs(lam))):
        raise DomainError(f"{name} is not positive semidefinite (min eigenvalue {lam[-1]:.3e})")
    return lam


def _sum_of_functions(A: np.ndarray, B: np.ndarray, f: ConcaveFn) -> np.ndarray:
    return as_hermitian(apply_fn(A, f) + apply_fn(B, f))


def _f_spectrum(lam: np.ndarray, f: ConcaveFn) -> np.ndarray:
    """Eigenvalues of f(M) from those of M, descending (f is nondecreasing)."""
    return np.asarray(f(np.clip(lam, 0.0, None)), dtype=float)


def forward_subadditive_check(A: ArrayLike, B: ArrayLike, f: ConcaveFn) -> ForwardSubadditiveResult:
    """``|||f(A+B)|||_(k) <= |||f(A)+f(B)|||_(k)`` for every Ky-Fan order k."""
    A = as_hermitian(A)
    B = as_hermitian(B)
    _psd_spectrum(A, "A")
    _psd_spectrum(B, "B")
    S = as_hermitian(A + B)
    # f(A)+f(B) and f(A+B) are PSD, so singular values are their eigenvalues.
    lhs_sv = np.clip(eigvalsh_desc(_sum_of_functions(A, B, f)), 0.0, None)
    rhs_sv = _f_spectrum(eigvalsh_desc(S), f)
    return ForwardSubadditiveResult(np.cumsum(lhs_sv), np.cumsum(rhs_sv))


def inner_product_lower_bound_check(A: ArrayLike, x: ArrayLike) -> tuple[np.ndarray | float, float, bool]:
    """``<Ax, x> >= ||A^{-1/2}||^{-2} = lambda_min(A)`` for unit x.

    ``x`` may be a single vector or a stack of row vectors. Non-unit vectors
    are renormalized and the returned flag is set.
    Returns ``(lhs, rhs, renormalized)``.
    """
    A = as_hermitian(A)
    lam = eigvalsh_desc(A)
    if not lam[-1] > pd_threshold(A, lam):
        raise SingularMatrixError("A must be positive definite")
    X = np.atleast_2d(np.asarray(x, dtype=np.complex128))
    if X.shape[1] != A.shape[0]:
        raise DomainError(f"vector length {X.shape[1]} does not match dimension {A.shape[0]}")
    norms = np.linalg.norm(X, axis=1)
    if np.any(norms == 0):
        raise DomainError("zero vector")
    renormalized = bool(np.any(np.abs(norms - 1.0) > 1e-12))
    X = X / norms[:, None]
    lhs = np.einsum("ij,kj,ik->i", X.conj(), A, X).real
    rhs = float(lam[-1])
    if np.ndim(x) == 1:
        return float(lhs[0]), rhs, renormalized
    return lhs, rhs, renormalized


def concave_inner_product_check(A: ArrayLike, f: ConcaveFn, x: ArrayLike) -> tuple[float, float]:
    """Jensen-type ``<f(A)x, x> <= f(<Ax, x>)`` for a unit vector x and PSD A."""
    A = as_hermitian(A)
    v = np.asarray(x, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    lhs = float(np.vdot(v, apply_fn(A, f) @ v).real)
    rhs = float(f(max(float(np.vdot(v, A @ v).real), 0.0)))
    return lhs, rhs


def _gamma_parts(A: np.ndarray, B: np.ndarray, f: ConcaveFn) -> tuple[float, np.ndarray]:
    _psd_spectrum(A, "A")
    _psd_spectrum(B, "B")
    lam_s = eigvalsh_desc(as_hermitian(A + B))
    m = float(lam_s[-1])
    if not m > pd_threshold(A + B, lam_s):
        raise DegenerateInputError("A + B is numerically singular; the reversed bound needs (A+B)^{-1/2}")
    spread = float(np.max(np.abs(eigvalsh_desc(as_hermitian(A - B)))))
    # ||f((A+B)/2)|| = max f(lambda_i / 2); halving is exact in binary floating point.
    f_half_norm = float(np.max(_f_spectrum(lam_s / 2.0, f)))
    gamma = 2.0 * (1.0 + spread / m) * (f_half_norm - f(m) / 2.0)
    if gamma < -1e-12 * (1.0 + f_half_norm):
        raise InvariantViolation(f"gap term came out negative: {gamma:.3e}")
    return gamma, lam_s


def reversed_gap_gamma(A: ArrayLike, B: ArrayLike, f: ConcaveFn) -> float:
    """The gap term of the reversed subadditive inequality (see module docstring)."""
    gamma, _ = _gamma_parts(as_hermitian(A), as_hermitian(B), f)
    return gamma


def reversed_ui_norm_check(A: ArrayLike, B: ArrayLike, f: ConcaveFn, spec: NormSpec | str) -> ReversedGapCertificate:
    """``|||f(A)+f(B)||| <= gamma |||I||| + |||f(A+B)|||``."""
    if isinstance(spec, str):
        spec = NormSpec.parse(spec)
    A = as_hermitian(A)
    B = as_hermitian(B)
    gamma, lam_s = _gamma_parts(A, B, f)
    n = A.shape[0]
    lhs_sv = np.clip(eigvalsh_desc(_sum_of_functions(A, B, f)), 0.0, None)
    rhs_sv = _f_spectrum(lam_s, f)
    lhs = norm_from_singular_values(lhs_sv, spec)
    rhs = gamma * identity_norm(n, spec) + norm_from_singular_values(rhs_sv, spec)
    return ReversedGapCertificate(gamma, lhs, rhs, spec)


def reversed_operator_norm_check(A: ArrayLike, B: ArrayLike, f: ConcaveFn) -> ReversedGapCertificate:
    """``||f(A)+f(B)|| <= gamma + ||f(A+B)||`` in the operator norm."""
    return reversed_ui_norm_check(A, B, f, NormSpec("operator"))


def reversed_ui_sweep(
    A: ArrayLike, B: ArrayLike, f: ConcaveFn, specs: list[NormSpec]
) -> list[ReversedGapCertificate]:
    """Evaluate the reversed bound for several norms sharing one set of spectra."""
    A = as_hermitian(A)
    B = as_hermitian(B)
    gamma, lam_s = _gamma_parts(A, B, f)
    n = A.shape[0]
    lhs_sv = np.clip(eigvalsh_desc(_sum_of_functions(A, B, f)), 0.0, None)
    rhs_sv = _f_spectrum(lam_s, f)
    return [
        ReversedGapCertificate(
            gamma,
            norm_from_singular_values(lhs_sv, s),
            gamma * identity_norm(n, s) + norm_from_singular_values(rhs_sv, s),
            s,
        )
        for s in specs
    ]
