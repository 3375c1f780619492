"""Unitarily invariant norms through singular values."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DomainError
from .linalg import as_complex_matrix, eigvalsh_desc, is_hermitian


class NormKind(str, enum.Enum):
    OPERATOR = "operator"
    TRACE = "trace"
    FROBENIUS = "frobenius"
    KY_FAN = "ky-fan"
    SCHATTEN = "schatten"


@dataclass(frozen=True)
class NormSpec:
    kind: NormKind
    param: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", NormKind(self.kind))
        if self.kind is NormKind.KY_FAN:
            if self.param is None or int(self.param) != self.param or self.param < 1:
                raise DomainError(f"ky-fan order must be an integer >= 1, got {self.param}")
            object.__setattr__(self, "param", int(self.param))
        elif self.kind is NormKind.SCHATTEN:
            if self.param is None or not self.param >= 1.0:
                raise DomainError(f"schatten exponent must be >= 1, got {self.param}")
            object.__setattr__(self, "param", float(self.param))

    def __str__(self) -> str:
        return {
            NormKind.OPERATOR: "op",
            NormKind.TRACE: "tr",
            NormKind.FROBENIUS: "fro",
            NormKind.KY_FAN: f"kf:{self.param}",
            NormKind.SCHATTEN: f"sch:{self.param!r}",
        }[self.kind]

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """Grammar: ``op``, ``tr``, ``fro``, ``kf:<k>``, ``sch:<p>``."""
        text = text.strip()
        simple = {"op": NormKind.OPERATOR, "tr": NormKind.TRACE, "fro": NormKind.FROBENIUS}
        if text in simple:
            return cls(simple[text])
        head, _, arg = text.partition(":")
        try:
            if head == "kf" and arg:
                return cls(NormKind.KY_FAN, int(arg))
            if head == "sch" and arg:
                return cls(NormKind.SCHATTEN, float(arg))
        except ValueError:
            pass
        raise DomainError(f"bad norm spec {text!r}")


OPERATOR = NormSpec(NormKind.OPERATOR)
TRACE = NormSpec(NormKind.TRACE)
FROBENIUS = NormSpec(NormKind.FROBENIUS)


def ky_fan(k: int) -> NormSpec:
    return NormSpec(NormKind.KY_FAN, k)


def schatten(p: float) -> NormSpec:
    return NormSpec(NormKind.SCHATTEN, p)


def singular_values(M: ArrayLike) -> NDArray[np.float64]:
    """Singular values, descending.

    For a Hermitian input these are the sorted absolute eigenvalues;
    otherwise they are the square roots of the eigenvalues of ``M^* M``.
    """
    arr = M if isinstance(M, np.ndarray) and M.dtype == np.complex128 else as_complex_matrix(M)
    if is_hermitian(arr):
        return np.sort(np.abs(eigvalsh_desc(arr)))[::-1]
    gram = arr.conj().T @ arr
    gram = 0.5 * (gram + gram.conj().T)
    return np.sqrt(np.clip(eigvalsh_desc(gram), 0.0, None))


def norm_from_singular_values(s: np.ndarray, spec: NormSpec) -> float:
    n = s.shape[0]
    kind = spec.kind
    if kind is NormKind.OPERATOR:
        return float(s[0])
    if kind is NormKind.TRACE:
        return float(np.sum(s))
    if kind is NormKind.FROBENIUS:
        return float(np.sqrt(np.sum(s * s)))
    if kind is NormKind.KY_FAN:
        if spec.param > n:
            raise DomainError(f"ky-fan order {spec.param} exceeds dimension {n}")
        return float(np.sum(s[: spec.param]))
    p = spec.param
    if math.isinf(p):
        return float(s[0])
    top = s[0]
    if top == 0.0:
        return 0.0
    # Factor out the largest value against overflow for large p.
    return float(top * np.sum((s / top) ** p) ** (1.0 / p))


def norm(M: ArrayLike, spec: NormSpec | str) -> float:
    if isinstance(spec, str):
        spec = NormSpec.parse(spec)
    return norm_from_singular_values(singular_values(M), spec)


def identity_norm(n: int, spec: NormSpec) -> float:
    """``|||I_n|||``; equals ``k`` exactly for ky-fan(k)."""
    return norm_from_singular_values(np.ones(n), spec)


def ui_sweep(n: int, extra_p: float | None = None) -> list[NormSpec]:
    """Ky-Fan 1..n plus trace, Frobenius, operator and optionally one Schatten-p."""
    specs = [ky_fan(k) for k in range(1, n + 1)] + [TRACE, FROBENIUS, OPERATOR, schatten(1.0), schatten(2.0)]
    if extra_p is not None:
        specs.append(schatten(extra_p))
    return specs
