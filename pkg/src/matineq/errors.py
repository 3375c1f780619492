"""Exception types raised across the package."""

from __future__ import annotations


class MatIneqError(Exception):
    """Base class for all errors raised by matineq."""


class DimensionError(MatIneqError, ValueError):
    """Shapes do not match, a matrix is not square, or an index is out of range."""


class DomainError(MatIneqError, ValueError):
    """A scalar argument or a spectrum lies outside the admissible domain."""


class SingularMatrixError(MatIneqError, ValueError):
    """A matrix required to be positive definite is (numerically) singular."""


class DegenerateInputError(MatIneqError, ValueError):
    """The inputs hit a degenerate case where the bound is undefined (e.g. a + b = 0)."""


class DecompositionError(MatIneqError, RuntimeError):
    """The Hermitian eigensolver failed to converge."""

    def __init__(self, message: str, seed: int | None = None) -> None:
        super().__init__(message if seed is None else f"{message} (seed={seed})")
        self.seed = seed


class InvariantViolation(MatIneqError, AssertionError):
    """A quantity that is nonnegative by construction came out negative."""
