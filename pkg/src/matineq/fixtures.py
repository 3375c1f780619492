"""Deterministic fixtures.

``EQUALITY_FIXTURES`` are fixed inputs attached to registry descriptors; the
harness runs them with every suite so that equality cases are checked on
purpose rather than left to sampling. ``DERIVED_EXAMPLES`` are hand-computed
values reproduced by ``matineq demo``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from . import accretive, determinant, linalg, norms, scalar, subadditive
from .concave import log1p, sqrt
from .sampling import Profile, SamplerConfig, ginibre, haar_unitary, random_pd, sample_pair


def _diag(*values: float) -> np.ndarray:
    return np.diag(np.asarray(values, dtype=float)).astype(np.complex128)


def _eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


@dataclass(frozen=True)
class EqualityFixture:
    """A fixed trial expected to produce ``expect`` (``equality`` or ``pass``)."""

    name: str
    descriptor_id: str
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    params: Mapping[str, Any] = field(default_factory=dict)
    expect: str = "equality"


def _generic_pd(seed: int, n: int) -> np.ndarray:
    return random_pd(np.random.default_rng(seed), n)


def _equality_fixtures() -> tuple[EqualityFixture, ...]:
    A3 = _generic_pd(11, 3)
    B3 = _generic_pd(12, 3)
    D = _diag(1.0, 2.0)
    I2 = _eye(2)
    fx = [
        EqualityFixture("forward identity function", "eq1-forward", A3, B3, {"fn": "id"}),
        EqualityFixture("reversed operator norm A=B=I", "thm-main-opnorm", I2, I2, {"fn": "sqrt"}),
        EqualityFixture("reversed trace norm A=B=I", "cor-reversed-ui", I2, I2, {"fn": "sqrt", "norm": "tr"}),
        EqualityFixture("inner product at eigenvector", "lemma-inner-lb", _diag(1.0, 4.0), _diag(1.0, 4.0),
                        {"x": [[1.0, 0.0]]}),
        EqualityFixture("detroot concavity A=B", "det-concave", A3, A3, {"t": 0.3}),
        EqualityFixture("logdet concavity A=B", "logdet-concave", A3, A3, {"t": 0.7}),
        EqualityFixture("reversed logdet Jensen t=1/2", "logdet-rev-jensen", A3, B3, {"t": 0.5}),
        EqualityFixture("Specht complement A=B", "specht-complement", A3, A3, {"t": 0.25}),
        EqualityFixture("reverse Minkowski A=B", "rev-minkowski", A3, A3, {"t": 0.25}),
        EqualityFixture("trace bound A=B", "trace-ub", A3, A3),
        EqualityFixture("double-sided A=B", "double-sided", A3, A3),
        EqualityFixture("variational minimizer", "variational-detroot", _diag(1.0, 4.0), I2, expect="pass"),
        EqualityFixture("t-limit A=B=I", "tlimit", I2, I2),
        EqualityFixture("detroot vs trace at A=I", "detroot-trace", _eye(3), _eye(3)),
        EqualityFixture("Minkowski A=B", "minkowski", A3, A3),
        EqualityFixture("Minkowski 1x1", "minkowski", _diag(2.0), _diag(5.0)),
        EqualityFixture("block identity diagonal", "block-identity", D, I2),
        EqualityFixture("Lin bounds A=B=I n=1", "lin-57", _eye(1), _eye(1)),
        EqualityFixture("Young bound diagonal", "young-88", D, I2, expect="pass"),
        EqualityFixture("Haynsworth diagonal 2x2", "classical-25-26-33-63", D, _diag(3.0, 1.0)),
        EqualityFixture("complex Hartfiel A=B=I", "complex-hartfiel-02", I2, I2),
        EqualityFixture("submatrix lemmas diagonal A", "submatrix-lemmas", _diag(1.0, 2.0, 3.0), _eye(3),
                        {"perturb": False}),
        EqualityFixture("Haynsworth-type complex diagonal", "haynsworth-complex", D, I2),
    ]
    for c in (0.5, 1.0, 3.0):
        fx.append(EqualityFixture(f"Fan B={c}A", "fan", A3, c * A3))
    return tuple(fx)


EQUALITY_FIXTURES = _equality_fixtures()


@dataclass(frozen=True)
class DerivedExample:
    """A hand-computed value; ``compute`` returns ``(observed, expected)``."""

    name: str
    compute: Callable[[], tuple[float, float]] = field(repr=False)
    tol: float = 1e-12

    def run(self) -> tuple[float, float, bool]:
        observed, expected = self.compute()
        ok = abs(observed - expected) <= self.tol * (1.0 + abs(expected))
        return float(observed), float(expected), bool(ok)


def _reconstruction_error() -> tuple[float, float]:
    rng = np.random.default_rng(3)
    G = ginibre(rng, 5)
    M = linalg.as_hermitian(G + G.conj().T)
    dec = linalg.spectral_decompose(M)
    return float(np.max(np.abs(dec.reconstruct() - M)) / np.max(np.abs(M))), 0.0


def _sqrt_square_error() -> tuple[float, float]:
    M = random_pd(np.random.default_rng(4), 4)
    R = linalg.sqrt_psd(M)
    return float(np.max(np.abs(R @ R - M)) / np.max(np.abs(M))), 0.0


def _inv_sqrt_error() -> tuple[float, float]:
    M = random_pd(np.random.default_rng(5), 4)
    R = linalg.inv_sqrt(M)
    return float(np.max(np.abs(R @ M @ R - np.eye(4)))), 0.0


def _block_vs_complex() -> tuple[float, float]:
    rng = np.random.default_rng(6)
    A, B = random_pd(rng, 3), random_pd(rng, 3)
    return float(np.linalg.det(linalg.block_embed(A, B)).real), abs(np.linalg.det(A + 1j * B)) ** 2


def _unitary_invariance() -> tuple[float, float]:
    rng = np.random.default_rng(7)
    M = ginibre(rng, 4)
    U, V = haar_unitary(rng, 4), haar_unitary(rng, 4)
    spec = norms.ky_fan(2)
    return norms.norm(U @ M @ V, spec), norms.norm(M, spec)


def _gram_singular_values() -> tuple[float, float]:
    M = ginibre(np.random.default_rng(8), 4)
    s = norms.singular_values(M)
    return float(np.sum(s ** 2)), float(np.sum(np.abs(M) ** 2))


def _sampler_min_eig() -> tuple[float, float]:
    A, B = sample_pair(SamplerConfig(dim=4, profile=Profile.GENERIC, seed=9))
    return float(min(linalg.eigvalsh_desc(A)[-1], linalg.eigvalsh_desc(B)[-1]) > 0), 1.0


def _specht_symmetry() -> tuple[float, float]:
    return scalar.specht_ratio(0.5), scalar.specht_ratio(2.0)


def _young_middle() -> tuple[float, float]:
    res = accretive.young_upper_check(_diag(1.0, 2.0), _eye(2))
    return math.exp(res[0].rhs), 3.375


def _submatrix_example() -> tuple[float, float]:
    A = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=np.complex128)
    Ainv = np.linalg.inv(A)
    return float(Ainv[0, 0].real), 2.0 / 3.0


def _variational_bstar() -> tuple[float, float]:
    r = determinant.variational_detroot_check(_diag(1.0, 4.0), trials=1000, rng=0)
    return r.details["bstar_value"], 2.0


def _tlimit_close() -> tuple[float, float]:
    res = determinant.tlimit_convergence_check(_diag(1.0, 2.0), _eye(2), [1e-3])
    return float(res.values[0]), 2.5


def _logdet_vs_cofactor() -> tuple[float, float]:
    M = random_pd(np.random.default_rng(10), 3).real.astype(np.complex128)
    M = linalg.as_hermitian(M + 3 * np.eye(3))
    m = M.real
    cof = (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )
    return linalg.log_det(M), math.log(cof)


def _derived_examples() -> tuple[DerivedExample, ...]:
    D, I2 = _diag(1.0, 2.0), _eye(2)
    f = sqrt()
    th = scalar.theorem1_bounds(f, 4.0, 1.0)
    s = 1.0 + math.sqrt(2.0)
    ex = [
        DerivedExample("spectral reconstruction error", _reconstruction_error, 1e-10),
        DerivedExample("sqrt_psd squares back", _sqrt_square_error, 1e-10),
        DerivedExample("inv_sqrt whitens", _inv_sqrt_error, 1e-10),
        DerivedExample("log_det vs cofactor expansion", _logdet_vs_cofactor, 1e-10),
        DerivedExample("block_embed(1, 1) determinant", lambda: (float(np.linalg.det(linalg.block_embed(_eye(1), _eye(1))).real), 2.0)),
        DerivedExample("block determinant = |det(A+iB)|^2", _block_vs_complex, 1e-10),
        DerivedExample("generic sampler is positive definite", _sampler_min_eig),
        DerivedExample("sum of squared singular values = Frobenius^2", _gram_singular_values, 1e-10),
        DerivedExample("Ky-Fan 2 unitary invariance", _unitary_invariance, 1e-10),
        DerivedExample("refined Jensen sqrt(4,1,1/2) lhs", lambda: (scalar.refined_jensen_gap(f, 4, 1, 0.5)[0], 1.5)),
        DerivedExample("refined Jensen sqrt(4,1,1/2) rhs", lambda: (scalar.refined_jensen_gap(f, 4, 1, 0.5)[1], 1.5)),
        DerivedExample("reversed Jensen sqrt(4,0,1/4) lhs", lambda: (scalar.reversed_jensen_gap(f, 4, 0, 0.25)[0], math.sqrt(3.0))),
        DerivedExample("reversed Jensen sqrt(4,0,1/4) rhs", lambda: (scalar.reversed_jensen_gap(f, 4, 0, 0.25)[1], 1.5 * math.sqrt(2.0))),
        DerivedExample("Theorem-1 sandwich lower at (4,1)", lambda: (th.lower, 3.2 * (math.sqrt(5.0) / 2.0 - math.sqrt(2.5)))),
        DerivedExample("Theorem-1 sandwich middle at (4,1)", lambda: (th.middle, math.sqrt(5.0) - 3.0)),
        DerivedExample("Theorem-1 sandwich upper at (4,1)", lambda: (th.upper, 0.8 * (math.sqrt(5.0) / 2.0 - math.sqrt(2.5)))),
        DerivedExample("midpoint corollary sqrt(4,0) lhs", lambda: (scalar.midpoint_corollary_check(f, 4, 0)[0], math.sqrt(2.0) - 1.0)),
        DerivedExample("midpoint corollary sqrt(4,0) rhs", lambda: (scalar.midpoint_corollary_check(f, 4, 0)[1], math.sqrt(2.0) - 1.0)),
        DerivedExample("Specht ratio S(2)", lambda: (scalar.specht_ratio(2.0), 2.0 / (math.e * math.log(2.0))), 1e-12),
        DerivedExample("Specht ratio S(1/2) = S(2)", _specht_symmetry),
        DerivedExample("gap term A=B=I, sqrt", lambda: (subadditive.reversed_gap_gamma(I2, I2, f), 2.0 - math.sqrt(2.0))),
        DerivedExample("gap term diag(1,0), diag(0,1), sqrt",
                       lambda: (subadditive.reversed_gap_gamma(_diag(1.0, 0.0), _diag(0.0, 1.0), f), 2.0 * math.sqrt(2.0) - 2.0)),
        DerivedExample("Ky-Fan 2 margin A=B=I, sqrt",
                       lambda: (float(subadditive.forward_subadditive_check(I2, I2, f).margins[1]), 4.0 - 2.0 * math.sqrt(2.0))),
        DerivedExample("reversed operator norm lhs A=B=I", lambda: (subadditive.reversed_operator_norm_check(I2, I2, f).lhs, 2.0)),
        DerivedExample("reversed operator norm rhs A=B=I", lambda: (subadditive.reversed_operator_norm_check(I2, I2, f).rhs, 2.0)),
        DerivedExample("reversed trace norm lhs A=B=I", lambda: (subadditive.reversed_ui_norm_check(I2, I2, f, "tr").lhs, 4.0)),
        DerivedExample("reversed trace norm rhs A=B=I", lambda: (subadditive.reversed_ui_norm_check(I2, I2, f, "tr").rhs, 4.0)),
        DerivedExample("reversed operator norm log1p holds",
                       lambda: (float(subadditive.reversed_operator_norm_check(D, _diag(3.0, 1.0), log1p()).margin >= 0), 1.0)),
        DerivedExample("detroot concavity rhs diag(1,4), I",
                       lambda: (determinant.detroot_concavity_check(_diag(1.0, 4.0), I2, 0.5).rhs, math.sqrt(2.5))),
        DerivedExample("detroot concavity lhs diag(1,4), I",
                       lambda: (determinant.detroot_concavity_check(_diag(1.0, 4.0), I2, 0.5).lhs, 1.5)),
        DerivedExample("logdet concavity lhs diag(1,4), I",
                       lambda: (determinant.logdet_concavity_check(_diag(1.0, 4.0), I2, 0.5).lhs, math.log(2.5))),
        DerivedExample("logdet concavity rhs diag(1,4), I",
                       lambda: (determinant.logdet_concavity_check(_diag(1.0, 4.0), I2, 0.5).rhs, 0.5 * math.log(4.0))),
        DerivedExample("Minkowski lhs diag(1,2), I", lambda: (determinant.minkowski_check(D, I2).lhs, math.sqrt(6.0))),
        DerivedExample("Minkowski rhs diag(1,2), I", lambda: (determinant.minkowski_check(D, I2).rhs, s)),
        DerivedExample("trace bound diag(1,2), I", lambda: (determinant.trace_upper_bound(D, I2)[0], 2.5)),
        DerivedExample("double-sided lower", lambda: (determinant.double_sided_check(D, I2)[0], s)),
        DerivedExample("double-sided middle", lambda: (determinant.double_sided_check(D, I2)[1], math.sqrt(6.0))),
        DerivedExample("double-sided upper", lambda: (determinant.double_sided_check(D, I2)[2], 2.5)),
        DerivedExample("variational value at B*", _variational_bstar, 1e-12),
        DerivedExample("t-limit at t=1e-3 near 2.5", _tlimit_close, 1e-2 / 3.5),
        DerivedExample("|det(A+iB)| diag(1,2), I", lambda: (accretive.abs_det_complex(D, I2), math.sqrt(10.0))),
        DerivedExample("Lin upper det(A+B)", lambda: (math.exp(accretive.lin_bounds_check(D, I2)[0].rhs), 6.0)),
        DerivedExample("Fan lhs diag(1,2), I", lambda: (accretive.fan_check(D, I2).lhs, math.sqrt(10.0))),
        DerivedExample("Fan rhs diag(1,2), I", lambda: (accretive.fan_check(D, I2).rhs, 3.0)),
        DerivedExample("Young middle det(A+BA^-1B/2)", _young_middle),
        DerivedExample("Haynsworth det(A+B)", lambda: (accretive.classical_superadditivity_checks(D, _diag(3.0, 1.0))[1].lhs, 12.0)),
        DerivedExample("Haynsworth right side", lambda: (accretive.haynsworth_rhs(D, _diag(3.0, 1.0)), 12.0)),
        DerivedExample("complex Hartfiel lhs A=B=I", lambda: (accretive.complex_hartfiel_check(I2, I2)[0].lhs, 4.0)),
        DerivedExample("complex Hartfiel rhs A=B=I", lambda: (accretive.complex_hartfiel_check(I2, I2)[0].rhs, 4.0)),
        DerivedExample("complex Hartfiel lhs diag(1,2), I", lambda: (accretive.complex_hartfiel_check(D, I2)[0].lhs, 10.0)),
        DerivedExample("complex Hartfiel rhs diag(1,2), I", lambda: (accretive.complex_hartfiel_check(D, I2)[0].rhs, 9.0)),
        DerivedExample("(A^-1)_1 for [[2,1],[1,2]]", _submatrix_example),
        DerivedExample("Haynsworth-type complex lhs", lambda: (accretive.haynsworth_type_complex_check(D, I2).primary.lhs, 10.0)),
        DerivedExample("Haynsworth-type complex rhs", lambda: (accretive.haynsworth_type_complex_check(D, I2).primary.rhs, 10.0)),
    ]
    return tuple(ex)


DERIVED_EXAMPLES = _derived_examples()
