"""Seeded random ensembles of PSD matrix pairs."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import Matrix, as_hermitian


class Profile(str, enum.Enum):
    GENERIC = "generic"
    NEAR_SINGULAR = "near-singular"
    ILL_CONDITIONED = "ill-conditioned"
    COMMUTING_PAIR = "commuting-pair"
    DIAGONAL_PAIR = "diagonal-pair"
    IDENTITY_SHIFTED = "identity-shifted"


PROFILES: tuple[str, ...] = tuple(p.value for p in Profile)

NEAR_SINGULAR_FLOOR = 1e-10
DEFAULT_KAPPA = 1e6


@dataclass(frozen=True)
class SamplerConfig:
    dim: int
    profile: Profile | str = Profile.GENERIC
    scale: float = 1.0
    seed: int = 0
    kappa: float = DEFAULT_KAPPA

    def __post_init__(self):
        object.__setattr__(self, "profile", Profile(self.profile))
        if int(self.dim) != self.dim or self.dim < 1:
            raise DomainError(f"dim must be a positive integer, got {self.dim}")
        if not self.kappa >= 1.0:
            raise DomainError(f"kappa must be >= 1, got {self.kappa}")
        if not self.scale > 0.0:
            raise DomainError(f"scale must be > 0, got {self.scale}")

    @property
    def epsilon(self) -> float:
        """Diagonal regularizer ``1e-8 * dim * scale``."""
        return 1e-8 * self.dim * self.scale


def ginibre(rng: np.random.Generator, n: int, m: int | None = None) -> Matrix:
    """Complex Gaussian matrix, real and imaginary parts N(0, 1/2)."""
    shape = (n, n if m is None else m)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> Matrix:
    Q, R = np.linalg.qr(ginibre(rng, n))
    d = R.diagonal()
    return Q * (d / np.abs(d))


def _spectrum(rng: np.random.Generator, n: int, scale: float) -> np.ndarray:
    return scale * rng.exponential(size=n) + 1e-8 * n * scale


def _with_spectrum(U: Matrix, lam: np.ndarray) -> Matrix:
    return as_hermitian((U * lam) @ U.conj().T)


def _gram(rng: np.random.Generator, cfg: SamplerConfig) -> Matrix:
    G = ginibre(rng, cfg.dim)
    return as_hermitian(cfg.scale * (G @ G.conj().T) + cfg.epsilon * np.eye(cfg.dim))


def random_pd(rng: np.random.Generator, n: int, scale: float = 1.0) -> Matrix:
    """A generic positive definite matrix ``scale * G G^* + eps I``."""
    return _gram(rng, SamplerConfig(dim=n, scale=scale))


def random_unit_vectors(rng: np.random.Generator, n: int, count: int) -> Matrix:
    """``count`` unit vectors in C^n as rows."""
    X = ginibre(rng, count, n)
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def sample_pair(cfg: SamplerConfig) -> tuple[Matrix, Matrix]:
    """Draw ``(A, B)`` for ``cfg``; identical output for identical configs."""
    rng = np.random.default_rng(cfg.seed)
    n, s = cfg.dim, cfg.scale
    p = cfg.profile
    if p is Profile.GENERIC:
        return _gram(rng, cfg), _gram(rng, cfg)
    if p is Profile.COMMUTING_PAIR:
        U = haar_unitary(rng, n)
        return _with_spectrum(U, _spectrum(rng, n, s)), _with_spectrum(U, _spectrum(rng, n, s))
    if p is Profile.DIAGONAL_PAIR:
        A = np.diag(_spectrum(rng, n, s)).astype(np.complex128)
        B = np.diag(_spectrum(rng, n, s)).astype(np.complex128)
        return A, B
    if p is Profile.NEAR_SINGULAR:
        out = []
        for _ in range(2):
            lam = np.sort(_spectrum(rng, n, s))[::-1]
            lam[-1] = NEAR_SINGULAR_FLOOR * s
            out.append(_with_spectrum(haar_unitary(rng, n), lam))
        return out[0], out[1]
    if p is Profile.ILL_CONDITIONED:
        lam = s * cfg.kappa ** -np.linspace(0.0, 1.0, n) if n > 1 else np.array([s])
        return (
            _with_spectrum(haar_unitary(rng, n), lam),
            _with_spectrum(haar_unitary(rng, n), lam),
        )
    if p is Profile.IDENTITY_SHIFTED:
        return _gram(rng, cfg), cfg.epsilon * np.eye(n, dtype=np.complex128)
    raise DomainError(f"unknown profile {p!r}")
