"""Determinant bounds for accretive-dissipative matrices ``A + iB`` with A, B > 0."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from .determinant import relative_eigenvalues
from .errors import DimensionError, SingularMatrixError
from .linalg import (
    PSD_ATOL,
    as_complex_matrix,
    as_hermitian,
    block_embed,
    eigvalsh_desc,
    leading_log_minors,
    pd_threshold,
    spectral_decompose,
    SpectralDecomposition,
)

FAN_EQUALITY_RTOL = 1e-9


@dataclass(frozen=True)
class ComplexDetResult:
    abs_det: float
    lhs: float
    rhs: float
    margin: float
    inequality_id: str
    log_domain: bool = False
    equality: bool = False

    def holds(self, rtol: float = 1e-9) -> bool:
        return self.margin >= -rtol * (1.0 + abs(self.lhs) + abs(self.rhs))


def _pd_dec(M: ArrayLike, name: str) -> tuple[np.ndarray, SpectralDecomposition]:
    H = as_hermitian(M)
    dec = spectral_decompose(H)
    if not dec.lambda_min > pd_threshold(H, dec.eigenvalues):
        raise SingularMatrixError(f"{name} is not positive definite")
    return H, dec


def _pair(A, B):
    A, da = _pd_dec(A, "A")
    B, db = _pd_dec(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch {A.shape} vs {B.shape}")
    return A, B, da, db


def _logdet(dec: SpectralDecomposition) -> float:
    return float(np.sum(np.log(dec.eigenvalues)))


def log_abs_det_complex(A: ArrayLike, B: ArrayLike) -> float:
    """``log |det(A + iB)|`` through LU with log-magnitude accumulation."""
    _, logabs = np.linalg.slogdet(as_complex_matrix(A) + 1j * as_complex_matrix(B))
    return float(logabs)


def abs_det_complex(A: ArrayLike, B: ArrayLike) -> float:
    """``|det(A + iB)|``; nonzero whenever A is positive definite."""
    A, B, _, _ = _pair(A, B)
    return math.exp(log_abs_det_complex(A, B))


def log_det_quadratic(dec_a: SpectralDecomposition, B: np.ndarray, weight: float = 1.0) -> float:
    """``log det(A + w B A^{-1} B)`` for Hermitian B.

    In the eigenbasis of A the matrix equals ``Z^* Z`` with
    ``Z = [L^{1/2}; sqrt(w) L^{-1/2} U^* B U]``, so the determinant is the
    squared product of the singular values of Z. This stays accurate when A
    is nearly singular, where forming ``A^{-1}`` explicitly does not.
    """
    U, lam = dec_a.eigenvectors, dec_a.eigenvalues
    Bt = U.conj().T @ B @ U
    Z = np.vstack([np.diag(np.sqrt(lam)), math.sqrt(weight) * Bt / np.sqrt(lam)[:, None]])
    s = np.linalg.svd(Z, compute_uv=False)
    return float(2.0 * np.sum(np.log(s)))


class BlockIdentity(NamedTuple):
    """Three evaluations of ``log |det(A+iB)|^2``."""

    lu: float
    block: float
    schur: float


def block_identity_logs(A: ArrayLike, B: ArrayLike) -> BlockIdentity:
    """``|det(A+iB)|^2 = det [[A, -B], [B, A]] = det A det(A + B A^{-1} B)``, as logs."""
    A, B, dec_a, _ = _pair(A, B)
    lu = 2.0 * log_abs_det_complex(A, B)
    _, block = np.linalg.slogdet(block_embed(A, B))
    schur = _logdet(dec_a) + log_det_quadratic(dec_a, B)
    return BlockIdentity(lu, float(block), schur)


def _ge(abs_det, lhs, rhs, ident, log_domain=False, equality=False):
    return ComplexDetResult(abs_det, float(lhs), float(rhs), float(lhs - rhs), ident, log_domain, equality)


def _le(abs_det, lhs, rhs, ident, log_domain=False):
    return ComplexDetResult(abs_det, float(lhs), float(rhs), float(rhs - lhs), ident, log_domain)


def lin_bounds_check(A: ArrayLike, B: ArrayLike) -> tuple[ComplexDetResult, ComplexDetResult]:
    """``|det(A+iB)| <= det(A+B) <= 2^{n/2} |det(A+iB)|``, both halves as logs."""
    A, B, _, _ = _pair(A, B)
    n = A.shape[0]
    l = log_abs_det_complex(A, B)
    lsum = float(np.sum(np.log(eigvalsh_desc(as_hermitian(A + B)))))
    ad = math.exp(l)
    return (
        _le(ad, l, lsum, "lin-57", log_domain=True),
        _le(ad, lsum, 0.5 * n * math.log(2.0) + l, "lin-57", log_domain=True),
    )


def fan_check(A: ArrayLike, B: ArrayLike) -> ComplexDetResult:
    """``|det(A+iB)|^{2/n} >= det^{2/n} A + det^{2/n} B``.

    ``equality`` is set when every eigenvalue of ``A^{-1}B`` has the same
    absolute value (relative spread within 1e-9), the equality condition.
    """
    A, B, dec_a, dec_b = _pair(A, B)
    n = A.shape[0]
    l = log_abs_det_complex(A, B)
    lhs = math.exp(2.0 * l / n)
    rhs = math.exp(2.0 * _logdet(dec_a) / n) + math.exp(2.0 * _logdet(dec_b) / n)
    mu = np.abs(relative_eigenvalues(A, B))
    equal = bool(mu.max() - mu.min() <= FAN_EQUALITY_RTOL * mu.max())
    return _ge(math.exp(l), lhs, rhs, "fan", equality=equal)


def young_upper_check(A: ArrayLike, B: ArrayLike, atol: float = PSD_ATOL) -> list[ComplexDetResult]:
    """``|det(A+iB)| <= det(A + B A^{-1} B / 2)``, and ``<= det(A+B)`` when ``B <= 2A``.

    The second result is present only when the Loewner condition holds,
    decided by ``lambda_min(2A - B) >= -atol (1 + ||2A - B||)``.
    """
    A, B, dec_a, _ = _pair(A, B)
    l = log_abs_det_complex(A, B)
    mid = log_det_quadratic(dec_a, B, 0.5)
    ad = math.exp(l)
    out = [_le(ad, l, mid, "young-88", log_domain=True)]
    if loewner_gate(A, B, atol):
        lsum = float(np.sum(np.log(eigvalsh_desc(as_hermitian(A + B)))))
        out.append(_le(ad, mid, lsum, "young-88", log_domain=True))
    return out


def loewner_gate(A: np.ndarray, B: np.ndarray, atol: float = PSD_ATOL) -> bool:
    """``B <= 2A`` via the smallest eigenvalue of ``2A - B``."""
    lam = eigvalsh_desc(as_hermitian(2.0 * A - B))
    return bool(lam[-1] >= -atol * (1.0 + np.max(np.abs(lam))))


def _minor_ratio_sum(log_num: np.ndarray, log_den: np.ndarray) -> float:
    """``sum_{k<n} det(N_k) / det(D_k)`` from leading log-minors."""
    return float(np.sum(np.exp(log_num[:-1] - log_den[:-1])))


def classical_superadditivity_checks(A: ArrayLike, B: ArrayLike) -> list[ComplexDetResult]:
    """Real-part superadditivity chain.

    In order: ``det(A+B) >= det A + det B``; Haynsworth's refinement with
    leading principal minors; Hartfiel's extra ``(2^n - 2n) sqrt(det AB)``
    term; ``det(A+B) >= det A + det B + (2^n - 2) sqrt(det AB)``; and the
    last right side dominating the first.
    """
    A, B, dec_a, dec_b = _pair(A, B)
    n = A.shape[0]
    la, lb = _logdet(dec_a), _logdet(dec_b)
    da, db = math.exp(la), math.exp(lb)
    dsum = math.exp(float(np.sum(np.log(eigvalsh_desc(as_hermitian(A + B))))))
    ma, mb = leading_log_minors(A), leading_log_minors(B)
    geo = math.exp(0.5 * (la + lb))
    ad = math.exp(log_abs_det_complex(A, B))
    haynsworth = (1.0 + _minor_ratio_sum(mb, ma)) * da + (1.0 + _minor_ratio_sum(ma, mb)) * db
    hartfiel = haynsworth + (2.0 ** n - 2.0 * n) * geo
    eq33 = da + db + (2.0 ** n - 2.0) * geo
    return [
        _ge(ad, dsum, da + db, "classical-63"),
        _ge(ad, dsum, haynsworth, "classical-25"),
        _ge(ad, dsum, hartfiel, "classical-26"),
        _ge(ad, dsum, eq33, "classical-33"),
        _ge(ad, eq33, da + db, "classical-33-vs-63"),
    ]


def haynsworth_rhs(A: ArrayLike, B: ArrayLike) -> float:
    """Right side of Haynsworth's inequality with leading principal submatrices k = 1..n-1."""
    A, B, dec_a, dec_b = _pair(A, B)
    ma, mb = leading_log_minors(A), leading_log_minors(B)
    return (1.0 + _minor_ratio_sum(mb, ma)) * math.exp(ma[-1]) + (1.0 + _minor_ratio_sum(ma, mb)) * math.exp(mb[-1])


def complex_hartfiel_check(A: ArrayLike, B: ArrayLike) -> list[ComplexDetResult]:
    """``|det(A+iB)|^2 >= det^2 A + det^2 B + (2^n - 2) det A det B``.

    For n >= 2 two more results follow: that right side dominates
    ``(det A + det B)^2``, and ``|det(A+iB)| >= det A + det B``.
    """
    A, B, dec_a, dec_b = _pair(A, B)
    n = A.shape[0]
    l = log_abs_det_complex(A, B)
    ad = math.exp(l)
    da, db = math.exp(_logdet(dec_a)), math.exp(_logdet(dec_b))
    rhs = da * da + db * db + (2.0 ** n - 2.0) * da * db
    out = [_ge(ad, ad * ad, rhs, "complex-hartfiel-02")]
    if n >= 2:
        out.append(_ge(ad, rhs, (da + db) ** 2, "complex-hartfiel-02"))
        out.append(_ge(ad, ad, da + db, "complex-hartfiel-02"))
    return out


class SubmatrixLemmaMargins(NamedTuple):
    """Smallest eigenvalues of the two PSD differences and their magnitude scales."""

    inverse: float
    quadratic: float
    inverse_scale: float
    quadratic_scale: float


def submatrix_lemma_checks(A: ArrayLike, B: ArrayLike, k: int) -> SubmatrixLemmaMargins:
    """``(A^{-1})_k >= (A_k)^{-1}`` and ``(B^* A^{-1} B)_k >= (B_k)^* (A_k)^{-1} B_k``.

    ``(.)_k`` is the leading ``k x k`` block; B may be any square matrix.
    With ``A = L L^*`` split into blocks ``L11, L21, L22`` and ``P = L21 L11^{-1}``,
    block inversion gives both differences as Gram matrices ``Z^* Z`` with
    ``Z1 = L22^{-1} P`` and ``Z2 = L22^{-1} (B21 - P B11)`` (first k columns of
    B). Evaluating them this way avoids subtracting two inverses of a
    possibly ill-conditioned A.
    """
    A, _ = _pd_dec(A, "A")
    B = as_complex_matrix(B)
    n = A.shape[0]
    if B.shape != A.shape:
        raise DimensionError(f"dimension mismatch {A.shape} vs {B.shape}")
    if not 1 <= k <= n:
        raise DimensionError(f"k={k} outside 1..{n}")
    try:
        L = np.linalg.cholesky(A)
    except np.linalg.LinAlgError:
        raise SingularMatrixError("Cholesky factorization of A failed") from None
    L11, L21, L22 = L[:k, :k], L[k:, :k], L[k:, k:]
    C1, C2 = B[:k, :k], B[k:, :k]
    L11_inv = scipy.linalg.solve_triangular(L11, np.eye(k), lower=True)
    Y = L11_inv @ C1
    s_inv = float(np.linalg.norm(L11_inv, 2) ** 2)
    s_quad = float(np.linalg.norm(Y, 2) ** 2)
    if k == n:
        return SubmatrixLemmaMargins(0.0, 0.0, 2.0 * s_inv, 2.0 * s_quad)
    P = L21 @ L11_inv
    Z1 = scipy.linalg.solve_triangular(L22, P, lower=True)
    Z2 = scipy.linalg.solve_triangular(L22, C2 - P @ C1, lower=True)
    d1 = eigvalsh_desc(as_hermitian(Z1.conj().T @ Z1))
    d2 = eigvalsh_desc(as_hermitian(Z2.conj().T @ Z2))
    return SubmatrixLemmaMargins(
        float(d1[-1]), float(d2[-1]), 2.0 * s_inv + float(d1[0]), 2.0 * s_quad + float(d2[0])
    )


class HaynsworthComplex(NamedTuple):
    identity: ComplexDetResult
    primary: ComplexDetResult
    literal: ComplexDetResult


def haynsworth_type_complex_check(A: ArrayLike, B: ArrayLike) -> HaynsworthComplex:
    """Haynsworth-Hartfiel type lower bound for ``|det(A+iB)|^2``, n >= 2.

    With ``X = B^{-1/2} A B^{-1/2}`` and ``Y = B^{1/2} A^{-1} B^{1/2}`` one has
    ``|det(A+iB)|^2 = det A det B det(X+Y)`` (``identity``) and, as
    ``det X det Y = 1``,

        |det(A+iB)|^2 >= det A det B [(1 + sum det Y_k/det X_k) det X
                                      + (1 + sum det X_k/det Y_k) det Y + 2^n - 2n]

    (``primary``). ``literal`` evaluates the form with coefficients
    ``det^{-1}(Y)_k / det(Y)_k`` and ``det^{-1}(X)_k / det(X)_k``; it is
    informational and carries no pass/fail meaning.
    """
    A, B, dec_a, dec_b = _pair(A, B)
    n = A.shape[0]
    if n < 2:
        raise DimensionError("the Haynsworth-type bound needs n >= 2")
    beta = dec_b.eigenvalues
    B_half = dec_b.reconstruct(np.sqrt(beta))
    B_mhalf = dec_b.reconstruct(1.0 / np.sqrt(beta))
    X = as_hermitian(B_mhalf @ A @ B_mhalf)
    Y = as_hermitian(B_half @ np.linalg.solve(A, B_half))
    la, lb = _logdet(dec_a), _logdet(dec_b)
    da, db = math.exp(la), math.exp(lb)
    mx, my = leading_log_minors(X), leading_log_minors(Y)
    l = log_abs_det_complex(A, B)
    ad = math.exp(l)
    lhs = ad * ad

    l_xy = float(np.sum(np.log(eigvalsh_desc(as_hermitian(X + Y)))))
    identity = ComplexDetResult(ad, 2.0 * l, la + lb + l_xy, -abs(2.0 * l - (la + lb + l_xy)),
                                "haynsworth-complex", log_domain=True)

    bracket = (
        (1.0 + _minor_ratio_sum(my, mx)) * math.exp(mx[-1])
        + (1.0 + _minor_ratio_sum(mx, my)) * math.exp(my[-1])
        + (2.0 ** n - 2.0 * n)
    )
    primary = _ge(ad, lhs, da * db * bracket, "haynsworth-complex")

    inv_sq_y = float(np.sum(np.exp(-2.0 * my[:-1])))
    inv_sq_x = float(np.sum(np.exp(-2.0 * mx[:-1])))
    literal_rhs = (1.0 + inv_sq_y) * db * db + (1.0 + inv_sq_x) * da * da + (2.0 ** n - 2.0 * n) * da * db
    literal = _ge(ad, lhs, literal_rhs, "haynsworth-complex-literal")
    return HaynsworthComplex(identity, primary, literal)
