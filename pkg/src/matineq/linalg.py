"""Dense Hermitian / complex matrix helpers shared by every inequality module.

Matrices are plain ``complex128`` numpy arrays. :func:`as_hermitian` is the
single gate that certifies Hermitian symmetry: it averages the input with its
conjugate transpose, so the result satisfies ``M[i, j] == conj(M[j, i])``
bit for bit. Determinants of Hermitian matrices are accumulated in the log
domain from eigenvalues; general complex determinants go through LU
(``numpy.linalg.slogdet``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import (
    DecompositionError,
    DimensionError,
    DomainError,
    SingularMatrixError,
)

Matrix = NDArray[np.complex128]

PSD_ATOL = 1e-10
PD_RTOL = 1e-12


def as_complex_matrix(M: ArrayLike) -> Matrix:
    """Validate a square matrix with finite entries and return it as complex."""
    arr = np.array(M, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionError(f"expected a nonempty square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise DomainError("matrix has non-finite entries")
    return arr


def as_hermitian(M: ArrayLike) -> Matrix:
    """Return ``(M + M^*) / 2`` after validating shape and finiteness."""
    arr = as_complex_matrix(M)
    out = arr + arr.conj().T
    out *= 0.5
    # Averaging leaves the diagonal with rounding-level imaginary parts.
    out.flat[:: out.shape[0] + 1] = out.diagonal().real
    return out


def is_hermitian(M: np.ndarray) -> bool:
    return M.ndim == 2 and M.shape[0] == M.shape[1] and np.array_equal(M, M.conj().T)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted descending and the matching unitary eigenvector matrix."""

    eigenvalues: NDArray[np.float64]
    eigenvectors: Matrix

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self, values: ArrayLike | None = None) -> Matrix:
        """``U diag(values) U^*``; defaults to the stored eigenvalues."""
        lam = self.eigenvalues if values is None else np.asarray(values)
        U = self.eigenvectors
        return as_hermitian((U * lam) @ U.conj().T)

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])


def spectral_decompose(M: ArrayLike, seed: int | None = None) -> SpectralDecomposition:
    """Hermitian eigendecomposition with eigenvalues in descending order."""
    H = M if isinstance(M, np.ndarray) and is_hermitian(M) else as_hermitian(M)
    try:
        lam, U = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"eigensolver did not converge: {exc}", seed) from exc
    return SpectralDecomposition(lam[::-1].copy(), U[:, ::-1].copy())


def eigvalsh_desc(M: np.ndarray) -> NDArray[np.float64]:
    """Eigenvalues of a Hermitian matrix, descending."""
    try:
        return np.linalg.eigvalsh(M)[::-1]
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(f"eigensolver did not converge: {exc}") from exc


def pd_threshold(M: np.ndarray, lam: np.ndarray | None = None) -> float:
    """Scale-aware singularity threshold ``1e-12 * (1 + ||M||_op)``."""
    if lam is None:
        lam = eigvalsh_desc(M)
    return PD_RTOL * (1.0 + float(np.max(np.abs(lam))))


def is_positive_semidefinite(M: ArrayLike, atol: float = PSD_ATOL) -> bool:
    lam = eigvalsh_desc(as_hermitian(M))
    return bool(lam[-1] >= -atol * (1.0 + np.max(np.abs(lam))))


def is_positive_definite(M: ArrayLike) -> bool:
    lam = eigvalsh_desc(as_hermitian(M))
    return bool(lam[-1] > pd_threshold(M, lam))


def loewner_le(A: ArrayLike, B: ArrayLike, atol: float = PSD_ATOL) -> bool:
    """``A <= B`` in the Loewner order, i.e. ``B - A`` is PSD up to ``atol``."""
    return is_positive_semidefinite(as_hermitian(B) - as_hermitian(A), atol)


def _require_pd(dec: SpectralDecomposition) -> None:
    lam = dec.eigenvalues
    if not lam[-1] > PD_RTOL * (1.0 + np.max(np.abs(lam))):
        raise SingularMatrixError(
            f"matrix is not positive definite (min eigenvalue {lam[-1]:.3e})"
        )


def apply_fn(
    M: ArrayLike,
    f: Callable[[np.ndarray], np.ndarray],
    atol: float = PSD_ATOL,
    dec: SpectralDecomposition | None = None,
) -> Matrix:
    """Functional calculus ``U f(diag(lambda)) U^*`` for a PSD matrix.

    Eigenvalues in ``[-atol * (1 + ||M||), 0)`` are clamped to zero. The
    identity function returns the (Hermitian-certified) input unchanged.
    """
    H = as_hermitian(M)
    if getattr(f, "is_identity", False):
        return H
    if dec is None:
        dec = spectral_decompose(H)
    lam = dec.eigenvalues
    floor = -atol * (1.0 + float(np.max(np.abs(lam))))
    if lam[-1] < floor:
        raise DomainError(f"eigenvalue {lam[-1]:.3e} outside the domain [0, inf)")
    return dec.reconstruct(f(np.clip(lam, 0.0, None)))


def principal_submatrix(M: ArrayLike, k: int) -> Matrix:
    """Leading ``k x k`` block of ``M``."""
    arr = as_complex_matrix(M)
    n = arr.shape[0]
    if not 1 <= k <= n:
        raise DimensionError(f"k={k} outside 1..{n}")
    return arr[:k, :k].copy()


def leading_log_minors(M: ArrayLike) -> NDArray[np.float64]:
    """``log det M_k`` for k = 1..n, from one Cholesky factorization.

    Principal submatrices of a PD matrix are PD, so every minor is positive.
    """
    H = as_hermitian(M)
    try:
        L = np.linalg.cholesky(H)
    except np.linalg.LinAlgError:
        raise SingularMatrixError("matrix is not positive definite") from None
    return np.cumsum(2.0 * np.log(np.abs(L.diagonal())))


def inv_sqrt(M: ArrayLike, dec: SpectralDecomposition | None = None) -> Matrix:
    """``M^{-1/2}`` for positive definite ``M``."""
    if dec is None:
        dec = spectral_decompose(M)
    _require_pd(dec)
    return dec.reconstruct(dec.eigenvalues ** -0.5)


def sqrt_psd(M: ArrayLike, dec: SpectralDecomposition | None = None) -> Matrix:
    """Principal square root of a PSD matrix."""
    return apply_fn(M, np.sqrt, dec=dec)


def log_det(M: ArrayLike, dec: SpectralDecomposition | None = None) -> float:
    """Sum of log eigenvalues of a positive definite Hermitian matrix."""
    if dec is None:
        dec = spectral_decompose(M)
    _require_pd(dec)
    return float(np.sum(np.log(dec.eigenvalues)))


def log_abs_det(M: ArrayLike) -> float:
    """``log |det M|`` for a general complex matrix via LU."""
    sign, logabs = np.linalg.slogdet(as_complex_matrix(M))
    if sign == 0:
        return float("-inf")
    return float(logabs)


def block_embed(A: ArrayLike, B: ArrayLike) -> Matrix:
    """The ``2n x 2n`` real-form embedding ``[[A, -B], [B, A]]``."""
    A = as_complex_matrix(A)
    B = as_complex_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch {A.shape} vs {B.shape}")
    return np.block([[A, -B], [B, A]])


def op_norm(M: np.ndarray) -> float:
    """Operator norm of a Hermitian matrix."""
    return float(np.max(np.abs(eigvalsh_desc(M))))


def solve_trace(A: np.ndarray, B: np.ndarray) -> float:
    """``tr(A B^{-1})`` computed as ``tr(X)`` with ``B X = A`` (no explicit inverse)."""
    try:
        X = np.linalg.solve(B, A)
    except np.linalg.LinAlgError:
        raise SingularMatrixError("matrix is singular") from None
    return float(np.trace(X).real)


# -- matrix-pair files --------------------------------------------------------


def _encode(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _decode(rows: list, n: int, name: str) -> Matrix:
    arr = np.array(rows, dtype=float)
    if arr.shape != (n, n, 2):
        raise DimensionError(f"{name}: expected shape ({n}, {n}, 2), got {arr.shape}")
    M = arr[..., 0] + 1j * arr[..., 1]
    if not np.allclose(M, M.conj().T, rtol=1e-12, atol=1e-12):
        raise DomainError(f"{name} is not Hermitian")
    return as_hermitian(M)


def pair_to_json(A: np.ndarray, B: np.ndarray) -> dict:
    """``{"dim": n, "A": [[[re, im], ...]], "B": [...]}``, row-major."""
    A = as_hermitian(A)
    B = as_hermitian(B)
    if A.shape != B.shape:
        raise DimensionError("dimension mismatch")
    return {"dim": int(A.shape[0]), "A": _encode(A), "B": _encode(B)}


def pair_from_json(obj: dict) -> tuple[Matrix, Matrix]:
    n = int(obj["dim"])
    return _decode(obj["A"], n, "A"), _decode(obj["B"], n, "B")


def save_pair(path: str | Path, A: np.ndarray, B: np.ndarray) -> None:
    Path(path).write_text(json.dumps(pair_to_json(A, B)))


def load_pair(path: str | Path) -> tuple[Matrix, Matrix]:
    return pair_from_json(json.loads(Path(path).read_text()))
