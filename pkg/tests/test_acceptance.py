"""Acceptance criteria, each at its stated tolerance.

Every test prints one ``[criterion N] PASS|FAIL ...`` line. Criterion 1 is
the full randomized suite; criterion 10 runs it a second time and compares
the JSON bodies byte for byte.
"""

import math
import time

import numpy as np
import pytest

from matineq import accretive as ac
from matineq import determinant as det
from matineq import harness, scalar, subadditive as sa
from matineq.concave import catalog, sqrt
from tests.conftest import pd
from tests.oracles import cofactor_det, detroot as detroot_oracle

# Test-side ensembles are seeded independently of the harness.
RNG_SEED = 20240601


def verdict(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def full_run():
    start = time.perf_counter()
    report = harness.run_suite(dims=range(1, 7), trials_per_cell=200, seed0=42, tol=1e-9)
    return report, time.perf_counter() - start


def test_c01_full_registry_suite(full_run, capsys):
    report, elapsed = full_run
    failing = {a.descriptor: a.failures for a in report.results if a.failures}
    bad_fixtures = [fx.name for fx, _, ok in report.fixtures if not ok]
    counted = sum(a.trials for a in report.results)
    ok = report.ok and not failing and not bad_fixtures
    verdict(capsys, 1, ok, f"{len(report.results)} descriptors, {counted} trials, "
            f"failures={failing or 0}, fixtures bad={bad_fixtures or 0}, {elapsed:.0f}s")
    # not-applicable cells (t at an endpoint, n = 1 for the n >= 2 bound) still count as scheduled trials
    for a in report.results:
        assert a.trials + a.not_applicable == 200 * 6 * 6, a.descriptor


def test_c02_block_identity(capsys):
    rng = np.random.default_rng(RNG_SEED + 2)
    worst = 0.0
    for i in range(1000):
        n = 1 + i % 8
        A, B = pd(rng, n), pd(rng, n)
        if n <= 5:
            abs_sq = abs(cofactor_det(A + 1j * B)) ** 2
            schur = cofactor_det(A).real * cofactor_det(A + B @ np.linalg.inv(A) @ B).real
            block = cofactor_det(np.block([[A, -B], [B, A]])).real if n <= 3 else np.linalg.det(
                np.block([[A, -B], [B, A]])).real
        else:
            abs_sq = abs(np.linalg.det(A + 1j * B)) ** 2
            schur = np.linalg.det(A).real * np.linalg.det(A + B @ np.linalg.inv(A) @ B).real
            block = np.linalg.det(np.block([[A, -B], [B, A]])).real
        assert math.isclose(abs_sq, schur, rel_tol=1e-8) and math.isclose(abs_sq, block, rel_tol=1e-8)
        logs = ac.block_identity_logs(A, B)
        for value in logs:
            worst = max(worst, abs(math.expm1(value - math.log(abs_sq))))
    verdict(capsys, 2, worst <= 1e-8, f"1000 pairs dims 1-8, worst relative error {worst:.2e} (rtol 1e-8)")


def test_c03_theorem1_sandwich(capsys):
    rng = np.random.default_rng(RNG_SEED + 3)
    worst = -math.inf
    worst_eq = 0.0
    for _ in range(10_000):
        fns = catalog(float(rng.uniform(0.05, 1.0)))
        f = fns[rng.integers(len(fns))]
        a, b = 10.0 ** rng.uniform(-3, 3, size=2)
        bound = scalar.theorem1_bounds(f, a, b)
        worst = max(worst, bound.lower - bound.middle, bound.middle - bound.upper)
        eq = scalar.theorem1_bounds(f, a, a)
        worst_eq = max(worst_eq, abs(eq.lower - eq.middle), abs(eq.upper - eq.middle))
    ok = worst <= 1e-10 and worst_eq <= 1e-12
    verdict(capsys, 3, ok, f"1e4 triples, worst violation {worst:.2e} (atol 1e-10), a=b deviation {worst_eq:.2e} (1e-12)")


def test_c04_reversed_norm_equality(capsys):
    I = np.eye(2)
    op = sa.reversed_operator_norm_check(I, I, sqrt())
    tr = sa.reversed_ui_norm_check(I, I, sqrt(), "tr")
    devs = [abs(op.lhs - 2), abs(op.rhs - 2), abs(tr.lhs - 4), abs(tr.rhs - 4)]
    verdict(capsys, 4, max(devs) <= 1e-12,
            f"op lhs={op.lhs!r} rhs={op.rhs!r}; trace lhs={tr.lhs!r} rhs={tr.rhs!r}")


def test_c05_determinant_chain(capsys):
    rng = np.random.default_rng(RNG_SEED + 5)
    worst = -math.inf
    worst_eq = 0.0
    for n in range(1, 9):
        for _ in range(1000):
            A, B = pd(rng, n), pd(rng, n)
            da, db, dab = det.detroot(A), det.detroot(B), det.detroot(A + B)
            upper = det.trace_upper_bound(A, B)[0]
            lower, middle, upper2 = det.double_sided_check(A, B)
            chain = [(da + db, dab), (dab, upper), (lower, middle), (middle, upper2)]
            worst = max(worst, max((l - r) / (1 + abs(l) + abs(r)) for l, r in chain))
        A = pd(rng, n)
        ref = 2 * detroot_oracle(A)
        lower, middle, upper = det.double_sided_check(A, A)
        terms = [det.detroot(A) * 2, det.detroot(2 * A), det.trace_upper_bound(A, A)[0], lower, middle, upper]
        worst_eq = max(worst_eq, max(abs(x - ref) / (1 + ref) for x in terms))
    ok = worst <= 1e-9 and worst_eq <= 1e-10
    verdict(capsys, 5, ok, f"8000 pairs dims 1-8, worst normalized violation {worst:.2e} (1e-9), "
            f"A=B deviation {worst_eq:.2e} (1e-10)")


def test_c06_tlimit(capsys):
    rng = np.random.default_rng(RNG_SEED + 6)
    ts = [1e-1, 1e-2, 1e-3, 1e-4]
    monotone = 0
    for i in range(100):
        n = 2 + i % 5
        A, B = pd(rng, n), pd(rng, n)
        res = det.tlimit_convergence_check(A, B, ts)
        limit = detroot_oracle(B) * (1 + np.trace(A @ np.linalg.inv(B)).real / n)
        assert math.isclose(res.limit, limit, rel_tol=1e-10)
        errors = np.abs(res.values - limit)
        monotone += bool(np.all(np.diff(errors) < 0))
    verdict(capsys, 6, monotone == 100, f"{monotone}/100 pairs with strictly decreasing error at t=1e-1..1e-4")


def test_c07_haynsworth_and_hartfiel(capsys):
    A, B = np.diag([1.0, 2.0]), np.diag([3.0, 1.0])
    lhs = ac.classical_superadditivity_checks(A, B)[1]
    rhs = ac.haynsworth_rhs(A, B)
    hart = ac.complex_hartfiel_check(np.diag([1.0, 2.0]), np.eye(2))[0]
    ok = abs(lhs.lhs - 12) <= 1e-12 and abs(rhs - 12) <= 1e-12 and abs(hart.lhs - 10) <= 1e-12 \
        and abs(hart.rhs - 9) <= 1e-12 and hart.lhs >= hart.rhs
    verdict(capsys, 7, ok, f"det(A+B)={lhs.lhs!r} Haynsworth rhs={rhs!r}; Hartfiel {hart.lhs!r} >= {hart.rhs!r}")


def test_c08_fan_equality(capsys):
    rng = np.random.default_rng(RNG_SEED + 8)
    flagged = 0
    worst = 0.0
    for n in range(1, 7):
        A = pd(rng, n)
        for c in (0.5, 1.0, 3.0):
            res = ac.fan_check(A, c * A)
            flagged += res.equality
            worst = max(worst, abs(res.margin) / (1 + abs(res.lhs) + abs(res.rhs)))
    generic = ac.fan_check(pd(rng, 3), pd(rng, 3))
    ok = flagged == 18 and worst <= 1e-9 and not generic.equality
    verdict(capsys, 8, ok, f"B=cA flagged {flagged}/18, worst |margin|/scale {worst:.2e}; "
            f"generic flag={generic.equality}")


def test_c09_variational(capsys):
    rng = np.random.default_rng(RNG_SEED + 9)
    worst_rel = 0.0
    beaten = 0
    for i in range(100):
        n = 2 + i % 5
        A = pd(rng, n)
        d = detroot_oracle(A)
        Bstar = d * np.linalg.inv(A)
        worst_rel = max(worst_rel, abs(np.trace(A @ Bstar).real / n - d) / d)
        worst_rel = max(worst_rel, abs(np.linalg.det(Bstar).real - 1.0))
        res = det.variational_detroot_check(A, trials=1000, rng=i)
        worst_rel = max(worst_rel, abs(res.details["bstar_value"] - d) / d)
        beaten += res.rhs < d * (1 - 1e-9)
    ok = worst_rel <= 1e-9 and beaten == 0
    verdict(capsys, 9, ok, f"100 A dims 2-6, worst minimizer deviation {worst_rel:.2e} (rtol 1e-9), "
            f"sampled B beating it: {beaten}")


def test_c10_determinism(full_run, capsys):
    first = harness.report_json(full_run[0])
    second = harness.report_json(harness.run_suite(dims=range(1, 7), trials_per_cell=200, seed0=42, tol=1e-9))
    ok = first.encode() == second.encode()
    verdict(capsys, 10, ok, f"two full runs, {len(first.encode())} bytes each, identical={ok}")
