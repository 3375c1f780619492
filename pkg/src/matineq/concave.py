"""Catalog of scalar concave functions with f(0) = 0 and f >= 0 on [0, inf)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError

__all__ = ["ConcaveFn", "CATALOG_IDS", "parse_fn", "catalog", "identity", "sqrt", "power", "log1p", "ratio"]


@dataclass(frozen=True)
class ConcaveFn:
    """A scalar function applied elementwise to nonnegative reals.

    ``eval`` must accept numpy arrays. ``param`` carries the exponent of
    the power family and is ``None`` otherwise.
    """

    id: str
    eval: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    param: float | None = None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0) or not np.all(np.isfinite(x)):
            raise DomainError(f"{self.id}: argument must be finite and >= 0")
        out = self.eval(x)
        return float(out) if out.ndim == 0 else out

    @property
    def is_identity(self) -> bool:
        return self.id == "id" or (self.id.startswith("pow:") and self.param == 1.0)

    @property
    def spec(self) -> str:
        """The CLI grammar string that parses back to this function."""
        return self.id


def identity() -> ConcaveFn:
    return ConcaveFn("id", lambda x: x * 1.0)


def sqrt() -> ConcaveFn:
    return ConcaveFn("sqrt", np.sqrt)


def power(p: float) -> ConcaveFn:
    """t**p; concave with f(0) = 0 only for 0 < p <= 1."""
    p = float(p)
    if not 0.0 < p <= 1.0:
        raise DomainError(f"power exponent must lie in (0, 1], got {p}")
    return ConcaveFn(f"pow:{p!r}", lambda x: np.power(x, p), param=p)


def log1p() -> ConcaveFn:
    return ConcaveFn("log1p", np.log1p)


def ratio() -> ConcaveFn:
    """t / (1 + t)."""
    return ConcaveFn("ratio", lambda x: x / (1.0 + x))


CATALOG_IDS = ("id", "sqrt", "pow", "log1p", "ratio")


def parse_fn(text: str) -> ConcaveFn:
    """Parse ``id``, ``sqrt``, ``pow:<p>``, ``log1p`` or ``ratio``."""
    text = text.strip()
    if text in ("id", "identity"):
        return identity()
    if text == "sqrt":
        return sqrt()
    if text == "log1p":
        return log1p()
    if text == "ratio":
        return ratio()
    if text.startswith("pow:"):
        try:
            p = float(text[4:])
        except ValueError:
            raise DomainError(f"bad exponent in {text!r}") from None
        return power(p)
    raise DomainError(f"unknown concave function {text!r}")


def catalog(p: float = 0.5) -> list[ConcaveFn]:
    """One instance of every catalog family."""
    return [identity(), sqrt(), power(p), log1p(), ratio()]
