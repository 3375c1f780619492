"""Inequality registry, randomized trials and reports.

Every registered inequality is evaluated as a list of :class:`Comparison`
objects, each carrying an oriented margin. A trial's status follows from its
worst comparison under the tolerance policy

    fail      iff margin < -tol * scale
    equality  iff |margin| <= EQUALITY_TOL * scale

with ``scale = 1 + |lhs| + |rhs|`` unless the comparison supplies its own,
and ``tol`` scaled by :data:`LOG_DOMAIN_TOL_FACTOR` for log-domain
comparisons unless the comparison carries its own tolerance. Identity comparisons (two evaluations of one quantity) gate
only when they fail; otherwise the worst inequality comparison is reported.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np

from . import __version__
from .accretive import (
    block_identity_logs,
    classical_superadditivity_checks,
    complex_hartfiel_check,
    fan_check,
    haynsworth_type_complex_check,
    lin_bounds_check,
    submatrix_lemma_checks,
    young_upper_check,
)
from .concave import ConcaveFn, identity, log1p, parse_fn, power, ratio, sqrt
from .determinant import (
    detroot_concavity_check,
    detroot_trace_check,
    double_sided_results,
    logdet_concavity_check,
    minkowski_check,
    reverse_minkowski_check,
    reversed_logdet_jensen_check,
    specht_complement_check,
    tlimit_convergence_check,
    trace_upper_bound_check,
    variational_detroot_check,
)
from .errors import DegenerateInputError, DimensionError, DomainError, SingularMatrixError
from .fixtures import EQUALITY_FIXTURES, EqualityFixture
from .linalg import as_hermitian, op_norm
from .norms import NormSpec, ui_sweep
from .sampling import PROFILES, Profile, SamplerConfig, ginibre, random_unit_vectors, sample_pair
from .subadditive import (
    forward_subadditive_check,
    inner_product_lower_bound_check,
    reversed_operator_norm_check,
    reversed_ui_norm_check,
    reversed_ui_sweep,
)

DEFAULT_TOL = 1e-9
EQUALITY_TOL = 1e-10
LOG_DOMAIN_TOL_FACTOR = 0.1
T_GRID = (0.0, 1e-4, 0.25, 0.5, 0.75, 1.0 - 1e-4, 1.0)
INNER_PRODUCT_VECTORS = 100
VARIATIONAL_SAMPLES = 64
BLOCK_IDENTITY_RTOL = 1e-8

PASS, FAIL, EQUALITY, NOT_APPLICABLE = "pass", "fail", "equality", "not-applicable"
CSV_HEADER = ("descriptor", "dim", "profile", "seed", "lhs", "rhs", "margin", "status")


@dataclass(frozen=True)
class Comparison:
    """One claim between ``lhs`` and ``rhs``, the two sides as written.

    ``margin`` is oriented so that a nonnegative value means the claim holds.
    """

    lhs: float
    rhs: float
    margin: float
    label: str = ""
    log_domain: bool = False
    scale: float | None = None
    identity: bool = False
    tol: float | None = None

    @property
    def effective_scale(self) -> float:
        if self.scale is not None:
            return float(self.scale)
        return 1.0 + abs(self.lhs) + abs(self.rhs)


def _le(lhs: float, rhs: float, label: str = "", **kw) -> Comparison:
    return Comparison(float(lhs), float(rhs), float(rhs - lhs), label, **kw)


def _same(a: float, b: float, label: str = "", **kw) -> Comparison:
    """Identity check ``a == b``; margin is ``-|a - b|``."""
    return Comparison(float(a), float(b), -abs(float(a) - float(b)), label, identity=True, **kw)


def _from_result(r) -> Comparison:
    return Comparison(float(r.lhs), float(r.rhs), float(r.margin), r.inequality_id, r.log_domain)


class TrialContext:
    """Inputs of one evaluation plus its parameter stream.

    Parameters listed in ``fixed`` are used verbatim; all others are drawn
    from ``rng`` and recorded in :attr:`params`.
    """

    def __init__(
        self,
        A: np.ndarray,
        B: np.ndarray,
        rng: np.random.Generator,
        fixed: Mapping[str, Any] | None = None,
        fn: ConcaveFn | None = None,
        norm: NormSpec | None = None,
    ) -> None:
        self.A = A
        self.B = B
        self.n = A.shape[0]
        self.rng = rng
        self.fixed = dict(fixed or {})
        self._fn = fn
        self._norm = norm
        self.params: dict[str, Any] = {}
        self.experimental: list[tuple[str, Comparison]] = []

    def t(self) -> float:
        if "t" in self.fixed:
            t = float(self.fixed["t"])
        elif self.rng.random() < 0.5:
            t = T_GRID[int(self.rng.integers(len(T_GRID)))]
        else:
            t = float(self.rng.random())
        self.params["t"] = t
        return t

    def fn(self) -> ConcaveFn:
        if "fn" in self.fixed:
            f = parse_fn(str(self.fixed["fn"]))
        elif self._fn is not None:
            f = self._fn
        else:
            choice = int(self.rng.integers(5))
            if choice == 2:
                f = power(float(self.rng.uniform(0.05, 1.0)))
            else:
                f = (identity, sqrt, None, log1p, ratio)[choice]()
        self.params["fn"] = f.id
        return f

    def norms(self) -> list[NormSpec]:
        if "norm" in self.fixed:
            specs = [NormSpec.parse(str(self.fixed["norm"]))]
        elif self._norm is not None:
            specs = [self._norm]
        else:
            specs = ui_sweep(self.n, float(self.rng.uniform(1.0, 6.0)))
        self.params["norm"] = ",".join(str(s) for s in specs)
        return specs


Evaluator = Callable[[TrialContext], list[Comparison]]


@dataclass(frozen=True)
class InequalityDescriptor:
    """A registry entry.

    ``reference`` names the result being checked and states it; ``arity``
    is one of ``pair``, ``pair+t``, ``pair+f``, ``pair+f+norm``, ``single``.
    """

    id: str
    arity: str
    evaluator: Evaluator = field(repr=False)
    reference: str
    min_dim: int = 1
    applicability: str = "A, B positive definite"

    def applicable(self, dim: int) -> bool:
        return dim >= self.min_dim


# --- evaluators -------------------------------------------------------------


def _eval_forward(ctx: TrialContext) -> list[Comparison]:
    res = forward_subadditive_check(ctx.A, ctx.B, ctx.fn())
    # res.lhs holds |||f(A)+f(B)|||_(k), res.rhs holds |||f(A+B)|||_(k)
    return [Comparison(float(res.lhs[k]), float(res.rhs[k]), float(res.margins[k]), f"kf:{k + 1}")
            for k in range(ctx.n)]


def _cert(c) -> Comparison:
    return _le(c.lhs, c.rhs, str(c.norm_spec))


def _eval_opnorm(ctx: TrialContext) -> list[Comparison]:
    return [_cert(reversed_operator_norm_check(ctx.A, ctx.B, ctx.fn()))]


def _eval_reversed_ui(ctx: TrialContext) -> list[Comparison]:
    f = ctx.fn()
    specs = ctx.norms()
    if len(specs) == 1:
        return [_cert(reversed_ui_norm_check(ctx.A, ctx.B, f, specs[0]))]
    return [_cert(c) for c in reversed_ui_sweep(ctx.A, ctx.B, f, specs)]


def _eval_inner(ctx: TrialContext) -> list[Comparison]:
    if "x" in ctx.fixed:
        X = np.asarray(ctx.fixed["x"], dtype=np.complex128)
        mats = [ctx.A]
    else:
        X = random_unit_vectors(ctx.rng, ctx.n, INNER_PRODUCT_VECTORS)
        mats = [ctx.A, ctx.B]
    out = []
    for name, M in zip("AB", mats):
        lhs, lam_min, _ = inner_product_lower_bound_check(M, X)
        out.append(_le(lam_min, float(np.min(lhs)), name))
    return out


def _with_t(check) -> Evaluator:
    def evaluate(ctx: TrialContext) -> list[Comparison]:
        res = check(ctx.A, ctx.B, ctx.t())
        return [_from_result(res)]

    return evaluate


def _eval_trace_ub(ctx: TrialContext) -> list[Comparison]:
    return [_from_result(r) for r in trace_upper_bound_check(ctx.A, ctx.B)]


def _eval_double_sided(ctx: TrialContext) -> list[Comparison]:
    return [_from_result(r) for r in double_sided_results(ctx.A, ctx.B)]


def _eval_variational(ctx: TrialContext) -> list[Comparison]:
    r = variational_detroot_check(ctx.A, trials=VARIATIONAL_SAMPLES, rng=ctx.rng)
    return [
        _from_result(r),
        _same(r.details["bstar_value"], r.lhs, "value at minimizer"),
        _same(r.details["bstar_det"], 1.0, "det of minimizer"),
    ]


def _eval_tlimit(ctx: TrialContext) -> list[Comparison]:
    res = tlimit_convergence_check(ctx.A, ctx.B)
    err = res.errors
    s = 1.0 + abs(res.limit)
    out = [_le(res.target, v, f"bound t={float(t)!r}") for t, v in zip(res.t, res.values)]
    out += [_le(v, res.limit, f"below limit t={float(t)!r}") for t, v in zip(res.t, res.values)]
    out += [_le(err[k + 1], err[k], f"error decreases t={float(res.t[k + 1])!r}", scale=s) for k in range(len(err) - 1)]
    return out


def _eval_detroot_trace(ctx: TrialContext) -> list[Comparison]:
    r = detroot_trace_check(ctx.A)
    out = [_from_result(r)]
    for key, bound in r.details.items():
        if key.startswith("eps_bound:"):
            eps = key.split(":", 1)[1]
            out.append(_le(r.details[f"eps_lhs:{eps}"], bound, f"eps={eps}"))
    return out


def _eval_minkowski(ctx: TrialContext) -> list[Comparison]:
    return [_from_result(minkowski_check(ctx.A, ctx.B))]


def _eval_block_identity(ctx: TrialContext) -> list[Comparison]:
    b = block_identity_logs(ctx.A, ctx.B)
    # |log x - log y| <= rtol is a relative tolerance on the determinants themselves
    kw = dict(log_domain=True, scale=1.0, tol=BLOCK_IDENTITY_RTOL)
    return [_same(b.lu, b.block, "block", **kw), _same(b.lu, b.schur, "schur", **kw)]


def _eval_lin(ctx: TrialContext) -> list[Comparison]:
    return [_from_result(r) for r in lin_bounds_check(ctx.A, ctx.B)]


def _eval_fan(ctx: TrialContext) -> list[Comparison]:
    return [_from_result(fan_check(ctx.A, ctx.B))]


def _eval_young(ctx: TrialContext) -> list[Comparison]:
    return [_from_result(r) for r in young_upper_check(ctx.A, ctx.B)]


def _eval_classical(ctx: TrialContext) -> list[Comparison]:
    return [_from_result(r) for r in classical_superadditivity_checks(ctx.A, ctx.B)]


def _eval_complex_hartfiel(ctx: TrialContext) -> list[Comparison]:
    return [_from_result(r) for r in complex_hartfiel_check(ctx.A, ctx.B)]


def _eval_submatrix(ctx: TrialContext) -> list[Comparison]:
    B = ctx.B
    if ctx.fixed.get("perturb", True):
        B = B + op_norm(B) * ginibre(ctx.rng, ctx.n)
    out = []
    # k = n is an identity (both sides are the full matrix); it only gates for n = 1
    for k in range(1, max(ctx.n - 1, 1) + 1):
        m = submatrix_lemma_checks(ctx.A, B, k)
        out.append(Comparison(0.0, m.inverse, m.inverse, f"inverse k={k}", scale=1.0 + m.inverse_scale))
        out.append(Comparison(0.0, m.quadratic, m.quadratic, f"quadratic k={k}", scale=1.0 + m.quadratic_scale))
    return out


def _eval_haynsworth_complex(ctx: TrialContext) -> list[Comparison]:
    h = haynsworth_type_complex_check(ctx.A, ctx.B)
    ctx.experimental.append(("haynsworth-complex-literal", _from_result(h.literal)))
    # Consistency of the X, Y construction; forming B^{-1/2} A B^{-1/2} loses
    # about cond(B) * eps, so this is reported without gating.
    ident = h.identity
    ctx.experimental.append(
        ("haynsworth-complex-xy-identity", _same(ident.lhs, ident.rhs, "det(X+Y) identity", log_domain=True))
    )
    return [_from_result(h.primary)]


def _build_registry() -> dict[str, InequalityDescriptor]:
    D = InequalityDescriptor
    entries = [
        D("eq1-forward", "pair+f", _eval_forward,
          "Bourin-Uchiyama subadditivity: |||f(A+B)||| <= |||f(A)+f(B)||| for concave f >= 0, "
          "checked on every Ky-Fan k-norm", applicability="A, B positive semidefinite"),
        D("thm-main-opnorm", "pair+f", _eval_opnorm,
          "Reversed subadditivity in the operator norm: ||f(A)+f(B)|| <= Gamma + ||f(A+B)||",
          applicability="A, B PSD, A+B positive definite"),
        D("cor-reversed-ui", "pair+f+norm", _eval_reversed_ui,
          "Reversed subadditivity for unitarily invariant norms: "
          "|||f(A)+f(B)||| <= Gamma |||I||| + |||f(A+B)|||",
          applicability="A, B PSD, A+B positive definite"),
        D("lemma-inner-lb", "single", _eval_inner,
          "Rayleigh lower bound <Ax, x> >= ||A^{-1/2}||^{-2} for unit x"),
        D("det-concave", "pair+t", _with_t(detroot_concavity_check),
          "Concavity of det^{1/n}: (1-t) det^{1/n}A + t det^{1/n}B <= det^{1/n}((1-t)A + tB)"),
        D("logdet-concave", "pair+t", _with_t(logdet_concavity_check),
          "Concavity of log det: (1-t) log det A + t log det B <= log det((1-t)A + tB)"),
        D("logdet-rev-jensen", "pair+t", _with_t(reversed_logdet_jensen_check),
          "Reversed Jensen for log det with R = max(t, 1-t) and the midpoint gap"),
        D("specht-complement", "pair+t", _with_t(specht_complement_check),
          "Specht-ratio complement: det((1-t)A+tB) <= (prod S(lambda_i(A^{-1/2}BA^{-1/2})))^{2R} "
          "det^{1-t}A det^t B"),
        D("rev-minkowski", "pair+t", _with_t(reverse_minkowski_check),
          "Reversed Minkowski determinant inequality with the concavity correction term, 0 < t < 1"),
        D("trace-ub", "pair", _eval_trace_ub,
          "Trace upper bound det^{1/n}(A+B) <= det^{1/n}B (1 + tr(AB^{-1})/n), and with A, B swapped"),
        D("double-sided", "pair", _eval_double_sided,
          "Double-sided bound det^{1/n}A + det^{1/n}B <= det^{1/n}(A+B) <= det^{1/n}B (1 + tr(AB^{-1})/n)"),
        D("variational-detroot", "single", _eval_variational,
          "Variational form det^{1/n}A = min{tr(AB)/n : B > 0, det B = 1}, attained at det^{1/n}(A) A^{-1}"),
        D("tlimit", "pair", _eval_tlimit,
          "t -> 0+ limit of the reversed Minkowski bound equals det^{1/n}B (1 + tr(AB^{-1})/n)"),
        D("detroot-trace", "single", _eval_detroot_trace,
          "AM-GM for eigenvalues det^{1/n}A <= tr(A)/n, also through the trace bound with B = eps I"),
        D("minkowski", "pair", _eval_minkowski,
          "Minkowski determinant inequality det^{1/n}(A+B) >= det^{1/n}A + det^{1/n}B"),
        D("block-identity", "pair", _eval_block_identity,
          "Block identity |det(A+iB)|^2 = det[[A,-B],[B,A]] = det A det(A + BA^{-1}B)"),
        D("lin-57", "pair", _eval_lin,
          "Lin's two-sided bound |det(A+iB)| <= det(A+B) <= 2^{n/2} |det(A+iB)|"),
        D("fan", "pair", _eval_fan,
          "Fan determinant inequality |det(A+iB)|^{2/n} >= det^{2/n}A + det^{2/n}B"),
        D("young-88", "pair", _eval_young,
          "Young-type bound |det(A+iB)| <= det(A + BA^{-1}B/2), and <= det(A+B) when B <= 2A"),
        D("classical-25-26-33-63", "pair", _eval_classical,
          "Superadditivity of det: det(A+B) >= det A + det B, with the Haynsworth leading-minor "
          "refinement, the Hartfiel (2^n - 2n) sqrt(det AB) term and the (2^n - 2) sqrt(det AB) bound"),
        D("complex-hartfiel-02", "pair", _eval_complex_hartfiel,
          "Complex Hartfiel bound |det(A+iB)|^2 >= det^2 A + det^2 B + (2^n - 2) det A det B"),
        D("submatrix-lemmas", "pair", _eval_submatrix,
          "Leading-block lemmas (A^{-1})_k >= (A_k)^{-1} and (B*A^{-1}B)_k >= (B_k)* (A_k)^{-1} B_k, "
          "B arbitrary", applicability="A positive definite, B any square matrix"),
        D("haynsworth-complex", "pair", _eval_haynsworth_complex,
          "Haynsworth-type lower bound for |det(A+iB)|^2 through X = B^{-1/2}AB^{-1/2}, "
          "Y = B^{1/2}A^{-1}B^{1/2}", min_dim=2, applicability="A, B positive definite, n >= 2"),
    ]
    return {d.id: d for d in entries}


REGISTRY: dict[str, InequalityDescriptor] = _build_registry()
EXPERIMENTAL_IDS = ("haynsworth-complex-literal", "haynsworth-complex-xy-identity")


def get_descriptor(descriptor_id: str) -> InequalityDescriptor:
    try:
        return REGISTRY[descriptor_id]
    except KeyError:
        raise KeyError(f"unknown descriptor {descriptor_id!r}") from None


# --- trial execution ----------------------------------------------------------


def trial_seed(seed0: int, descriptor_id: str, dim: int, profile: str, index: int) -> int:
    """Stable unsigned 64-bit seed of one trial."""
    key = f"{int(seed0)}|{descriptor_id}|{int(dim)}|{Profile(profile).value}|{int(index)}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def _classify(c: Comparison, tol: float) -> tuple[str, float]:
    """Status and normalized margin of one comparison."""
    if c.tol is not None:
        t = c.tol
    else:
        t = tol * LOG_DOMAIN_TOL_FACTOR if c.log_domain else tol
    s = c.effective_scale
    if not math.isfinite(c.margin):
        return FAIL, -math.inf
    if c.margin < -t * s:
        status = FAIL
    elif abs(c.margin) <= EQUALITY_TOL * s:
        status = EQUALITY
    else:
        status = PASS
    return status, c.margin / (t * s)


def reduce_comparisons(comparisons: Sequence[Comparison], tol: float) -> tuple[Comparison, str]:
    """Pick the comparison that decides the trial and its status."""
    if not comparisons:
        raise ValueError("no comparisons to reduce")
    graded = [(c, *_classify(c, tol)) for c in comparisons]
    failed_ids = [g for g in graded if g[0].identity and g[1] == FAIL]
    pool = failed_ids or [g for g in graded if not g[0].identity] or graded
    c, status, _ = min(pool, key=lambda g: g[2])
    return c, status


@dataclass(frozen=True)
class TrialResult:
    descriptor_id: str
    seed: int
    dim: int
    profile: str
    params: Mapping[str, Any]
    lhs: float
    rhs: float
    margin: float
    status: str
    part: str = ""
    index: int = -1
    experimental: tuple[tuple[str, float, float, float, str], ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "descriptor": self.descriptor_id,
            "seed": self.seed,
            "dim": self.dim,
            "profile": self.profile,
            "index": self.index,
            "params": dict(self.params),
            "lhs": _json_float(self.lhs),
            "rhs": _json_float(self.rhs),
            "margin": _json_float(self.margin),
            "status": self.status,
            "part": self.part,
        }


def evaluate(
    descriptor: InequalityDescriptor,
    A: np.ndarray,
    B: np.ndarray,
    rng: np.random.Generator,
    tol: float = DEFAULT_TOL,
    fixed: Mapping[str, Any] | None = None,
    fn: ConcaveFn | None = None,
    norm: NormSpec | None = None,
    *,
    seed: int = 0,
    profile: str = "fixture",
    index: int = -1,
) -> TrialResult:
    """Evaluate one descriptor on given matrices."""
    n = A.shape[0]
    ctx = TrialContext(A, B, rng, fixed, fn, norm)
    nan = float("nan")
    if not descriptor.applicable(n):
        return TrialResult(descriptor.id, seed, n, profile, {}, nan, nan, nan, NOT_APPLICABLE, "", index)
    try:
        comparisons = descriptor.evaluator(ctx)
    except (DegenerateInputError, SingularMatrixError) as exc:
        return TrialResult(descriptor.id, seed, n, profile, ctx.params, nan, nan, nan, NOT_APPLICABLE,
                           type(exc).__name__, index)
    c, status = reduce_comparisons(comparisons, tol)
    experimental = tuple(
        (eid, ec.lhs, ec.rhs, ec.margin, _classify(ec, tol)[0]) for eid, ec in ctx.experimental
    )
    return TrialResult(descriptor.id, seed, n, profile, ctx.params, c.lhs, c.rhs, c.margin, status,
                       c.label, index, experimental)


@dataclass(frozen=True)
class SuiteOptions:
    """Sampling options shared by every trial of a suite."""

    scale: float = 1.0
    kappa: float = 1e6
    fn: ConcaveFn | None = None
    norm: NormSpec | None = None


def replay(
    descriptor_id: str,
    dim: int,
    profile: str,
    seed: int,
    tol: float = DEFAULT_TOL,
    options: SuiteOptions = SuiteOptions(),
    params: Mapping[str, Any] | None = None,
    index: int = -1,
) -> TrialResult:
    """Re-run the trial identified by its seed.

    Matrices come from the sampler seeded with ``seed``; sampled parameters
    come from a second stream derived from the same seed, so the seed alone
    reproduces the trial. ``params`` pins parameters explicitly.
    """
    d = get_descriptor(descriptor_id)
    profile = Profile(profile).value
    A, B = sample_pair(SamplerConfig(dim=dim, profile=profile, scale=options.scale, seed=seed, kappa=options.kappa))
    rng = np.random.default_rng([seed, 1])
    return evaluate(d, A, B, rng, tol, params, options.fn, options.norm, seed=seed, profile=profile, index=index)


def run_fixture(fx: EqualityFixture, tol: float = DEFAULT_TOL) -> TrialResult:
    d = get_descriptor(fx.descriptor_id)
    return evaluate(d, as_hermitian(fx.A), as_hermitian(fx.B), np.random.default_rng(0), tol, fx.params)


def fixture_ok(fx: EqualityFixture, result: TrialResult) -> bool:
    if fx.expect == EQUALITY:
        return result.status == EQUALITY
    return result.status in (PASS, EQUALITY)


# --- aggregation and reports -------------------------------------------------------


def _json_float(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


@dataclass
class Aggregate:
    descriptor: str
    trials: int = 0
    not_applicable: int = 0
    failures: int = 0
    equality_hits: int = 0
    margins: list[float] = field(default_factory=list, repr=False)
    failing: list[tuple[int, int, str]] = field(default_factory=list)

    def add(self, status: str, margin: float, seed: int, dim: int, profile: str) -> None:
        if status == NOT_APPLICABLE:
            self.not_applicable += 1
            return
        self.trials += 1
        self.margins.append(margin)
        if status == FAIL:
            self.failures += 1
            self.failing.append((seed, dim, profile))
        elif status == EQUALITY:
            self.equality_hits += 1

    def to_dict(self) -> dict[str, Any]:
        m = np.asarray(self.margins, dtype=float)
        finite = m[np.isfinite(m)]
        return {
            "trials": self.trials,
            "not_applicable": self.not_applicable,
            "failures": self.failures,
            "min_margin": _json_float(float(m.min())) if m.size else None,
            "mean_margin": _json_float(float(finite.mean())) if finite.size else None,
            "equality_hits": self.equality_hits,
            "failing_seeds": [s for s, _, _ in self.failing],
            "failing_trials": [{"seed": s, "dim": d, "profile": p} for s, d, p in self.failing],
        }


@dataclass
class VerificationReport:
    config: dict[str, Any]
    results: list[Aggregate]
    trials: list[TrialResult] = field(repr=False)
    fixtures: list[tuple[EqualityFixture, TrialResult, bool]] = field(repr=False)
    experimental: list[Aggregate]
    version: str = __version__

    @property
    def failures(self) -> int:
        """Non-experimental failures, fixtures included."""
        return sum(a.failures for a in self.results) + sum(1 for _, _, ok in self.fixtures if not ok)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def aggregate(self, descriptor_id: str) -> Aggregate:
        for a in self.results:
            if a.descriptor == descriptor_id:
                return a
        raise KeyError(descriptor_id)

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config,
            "results": [{"descriptor": a.descriptor, "aggregates": a.to_dict()} for a in self.results],
            "fixtures": [
                {
                    "name": fx.name,
                    "descriptor": fx.descriptor_id,
                    "expect": fx.expect,
                    "status": r.status,
                    "lhs": _json_float(r.lhs),
                    "rhs": _json_float(r.rhs),
                    "margin": _json_float(r.margin),
                    "ok": ok,
                }
                for fx, r, ok in self.fixtures
            ],
            "experimental": [{"descriptor": a.descriptor, "aggregates": a.to_dict()} for a in self.experimental],
            "version": self.version,
        }


def _validate_dims(dims: Iterable[int]) -> list[int]:
    out = []
    for d in dims:
        if isinstance(d, bool) or int(d) != d or d < 1:
            raise DimensionError(f"invalid dimension {d!r}")
        out.append(int(d))
    if not out:
        raise DimensionError("dims must be nonempty")
    return out


def run_suite(
    descriptor_ids: Sequence[str] | None = None,
    dims: Sequence[int] = (1, 2, 3, 4, 5, 6),
    profiles: Sequence[str] | None = None,
    trials_per_cell: int = 200,
    seed0: int = 42,
    tol: float = DEFAULT_TOL,
    options: SuiteOptions = SuiteOptions(),
    include_fixtures: bool = True,
) -> VerificationReport:
    """Run ``trials_per_cell`` trials for every (descriptor, dim, profile) cell.

    ``descriptor_ids=None`` selects the whole registry. Failures never stop
    the run. Output is ordered by descriptor id, dim, profile and index.
    """
    ids = sorted(REGISTRY) if descriptor_ids is None else sorted(dict.fromkeys(descriptor_ids))
    for i in ids:
        get_descriptor(i)
    dims = _validate_dims(dims)
    profiles = [Profile(p).value for p in (PROFILES if profiles is None else profiles)]
    if not profiles:
        raise DomainError("profiles must be nonempty")
    if int(trials_per_cell) != trials_per_cell or trials_per_cell < 1:
        raise DomainError("trials_per_cell must be a positive integer")
    if not tol > 0:
        raise DomainError("tol must be positive")

    results: list[Aggregate] = []
    experimental: dict[str, Aggregate] = {}
    trials: list[TrialResult] = []
    for did in ids:
        agg = Aggregate(did)
        for dim in sorted(dims):
            for profile in sorted(profiles):
                for index in range(trials_per_cell):
                    seed = trial_seed(seed0, did, dim, profile, index)
                    r = replay(did, dim, profile, seed, tol, options, index=index)
                    trials.append(r)
                    agg.add(r.status, r.margin, seed, dim, profile)
                    for eid, _, _, margin, status in r.experimental:
                        experimental.setdefault(eid, Aggregate(eid)).add(status, margin, seed, dim, profile)
        results.append(agg)

    fixtures = []
    if include_fixtures:
        for fx in EQUALITY_FIXTURES:
            if fx.descriptor_id in ids:
                r = run_fixture(fx, tol)
                fixtures.append((fx, r, fixture_ok(fx, r)))

    config = {
        "descriptors": ids,
        "dims": sorted(dims),
        "profiles": sorted(profiles),
        "trials_per_cell": int(trials_per_cell),
        "seed": int(seed0),
        "tol": tol,
        "log_domain_tol": tol * LOG_DOMAIN_TOL_FACTOR,
        "equality_tol": EQUALITY_TOL,
        "scale": options.scale,
        "kappa": options.kappa,
        "fn": None if options.fn is None else options.fn.id,
        "norm": None if options.norm is None else str(options.norm),
    }
    return VerificationReport(config, results, trials, fixtures, sorted(experimental.values(), key=lambda a: a.descriptor))


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"


def report_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.trials:
        w.writerow([r.descriptor_id, r.dim, r.profile, r.seed, repr(r.lhs), repr(r.rhs), repr(r.margin), r.status])
    return buf.getvalue()


def emit_report(report: VerificationReport, fmt: str = "json", path: str | Path | None = None) -> str:
    """Serialize ``report`` as JSON or CSV; write it to ``path`` when given."""
    if fmt == "json":
        text = report_json(report)
    elif fmt == "csv":
        text = report_csv(report)
    else:
        raise DomainError(f"unknown report format {fmt!r}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def read_csv_report(path: str | Path) -> list[dict[str, Any]]:
    """Rows of a CSV report with numeric fields parsed."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        row["dim"] = int(row["dim"])
        row["seed"] = int(row["seed"])
        for key in ("lhs", "rhs", "margin"):
            row[key] = float(row[key])
    return rows


def empty_report(tol: float = DEFAULT_TOL) -> VerificationReport:
    """A report with no descriptors."""
    config = {"descriptors": [], "dims": [], "profiles": [], "trials_per_cell": 0, "seed": None, "tol": tol}
    return VerificationReport(config, [], [], [], [])
