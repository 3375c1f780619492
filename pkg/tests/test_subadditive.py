import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from matineq import subadditive as sa
from matineq.concave import catalog, identity, log1p, sqrt
from matineq.errors import DegenerateInputError, DomainError
from matineq.norms import NormSpec, ui_sweep
from tests.conftest import diag, pd
from tests.oracles import fn_of_matrix, ky_fan, svdvals

FNS = catalog(0.3)
I2 = np.eye(2, dtype=complex)


def gamma_oracle(A, B, f):
    S = A + B
    m = np.linalg.eigvalsh(S).min()
    spread = svdvals(A - B)[0]
    half = svdvals(fn_of_matrix(S / 2, f.eval))[0]
    return 2 * (1 + spread / m) * (half - f.eval(m) / 2)


def psd_pair(seed, n):
    r = np.random.default_rng(seed)
    G = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    H = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    return G @ G.conj().T, H @ H.conj().T + 1e-3 * np.eye(n)


class TestForward:
    def test_identity_pair_sqrt(self):
        res = sa.forward_subadditive_check(I2, I2, sqrt())
        assert res.lhs.tolist() == [2.0, 4.0]
        assert res.rhs == pytest.approx([math.sqrt(2), 2 * math.sqrt(2)], abs=1e-15)
        assert res.margins[1] == pytest.approx(4 - 2 * math.sqrt(2), abs=1e-14)

    def test_identity_function_is_tight(self, rng):
        A, B = pd(rng, 4), pd(rng, 4)
        res = sa.forward_subadditive_check(A, B, identity())
        assert np.allclose(res.margins, 0.0, atol=1e-12)

    def test_against_svd_oracle(self, rng):
        A, B = pd(rng, 4), pd(rng, 4)
        f = sqrt()
        res = sa.forward_subadditive_check(A, B, f)
        L = fn_of_matrix(A, np.sqrt) + fn_of_matrix(B, np.sqrt)
        R = fn_of_matrix(A + B, np.sqrt)
        for k in range(1, 5):
            assert res.lhs[k - 1] == pytest.approx(ky_fan(L, k), rel=1e-10)
            assert res.rhs[k - 1] == pytest.approx(ky_fan(R, k), rel=1e-10)

    def test_rejects_indefinite(self):
        with pytest.raises(DomainError):
            sa.forward_subadditive_check(diag(1.0, -1.0), I2, sqrt())

    @given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(0, len(FNS) - 1))
    def test_property(self, seed, n, i):
        A, B = psd_pair(seed, n)
        res = sa.forward_subadditive_check(A, B, FNS[i])
        assert np.all(res.margins >= -1e-9 * (1 + res.lhs + res.rhs))


class TestInnerProduct:
    def test_eigenvector_equality(self):
        lhs, rhs, renorm = sa.inner_product_lower_bound_check(diag(1.0, 4.0), [1.0, 0.0])
        assert lhs == rhs == 1.0 and not renorm

    def test_batch_and_renormalization(self, rng):
        A = pd(rng, 3)
        X = rng.standard_normal((50, 3)) * 3
        lhs, rhs, renorm = sa.inner_product_lower_bound_check(A, X)
        assert renorm
        assert rhs == pytest.approx(np.linalg.eigvalsh(A).min(), rel=1e-12)
        assert np.all(lhs >= rhs - 1e-12)

    def test_no_inverse_square_root_needed(self, rng):
        A = pd(rng, 3)
        Ais = fn_of_matrix(A, lambda w: w ** -0.5)
        assert sa.inner_product_lower_bound_check(A, [1, 0, 0])[1] == pytest.approx(svdvals(Ais)[0] ** -2, rel=1e-10)

    def test_zero_vector(self):
        with pytest.raises(DomainError):
            sa.inner_product_lower_bound_check(I2, [0.0, 0.0])

    def test_concave_jensen_vector_form(self, rng):
        A = pd(rng, 3)
        for x in rng.standard_normal((20, 3)):
            lhs, rhs = sa.concave_inner_product_check(A, sqrt(), x)
            assert lhs <= rhs + 1e-12


class TestGamma:
    def test_identity_pair(self):
        assert sa.reversed_gap_gamma(I2, I2, sqrt()) == pytest.approx(2 - math.sqrt(2), abs=1e-15)

    def test_orthogonal_projections(self):
        # ||A - B|| = 1, lambda_min(A + B) = 1, ||f((A+B)/2)|| = sqrt(1/2)
        g = sa.reversed_gap_gamma(diag(1.0, 0.0), diag(0.0, 1.0), sqrt())
        assert g == pytest.approx(2 * math.sqrt(2) - 2, abs=1e-14)

    def test_singular_sum(self):
        with pytest.raises(DegenerateInputError):
            sa.reversed_gap_gamma(diag(1.0, 0.0), diag(1.0, 0.0), sqrt())

    def test_identity_function_gamma_positive(self, rng):
        A, B = pd(rng, 3), pd(rng, 3)
        assert sa.reversed_gap_gamma(A, B, identity()) >= 0

    @given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(0, len(FNS) - 1))
    def test_matches_oracle(self, seed, n, i):
        A, B = psd_pair(seed, n)
        assert sa.reversed_gap_gamma(A, B, FNS[i]) == pytest.approx(gamma_oracle(A, B, FNS[i]), rel=1e-8, abs=1e-12)


class TestReversed:
    def test_operator_norm_equality(self):
        c = sa.reversed_operator_norm_check(I2, I2, sqrt())
        assert abs(c.lhs - 2.0) <= 1e-12 and abs(c.rhs - 2.0) <= 1e-12
        assert c.holds()

    def test_trace_norm_equality(self):
        c = sa.reversed_ui_norm_check(I2, I2, sqrt(), "tr")
        assert abs(c.lhs - 4.0) <= 1e-12 and abs(c.rhs - 4.0) <= 1e-12

    def test_log1p_holds(self, rng):
        A, B = pd(rng, 4), pd(rng, 4)
        c = sa.reversed_operator_norm_check(A, B, log1p())
        assert c.margin >= 0
        expected_lhs = svdvals(fn_of_matrix(A, np.log1p) + fn_of_matrix(B, np.log1p))[0]
        assert c.lhs == pytest.approx(expected_lhs, rel=1e-10)

    def test_sweep_consistent_with_single(self, rng):
        A, B = pd(rng, 3), pd(rng, 3)
        specs = ui_sweep(3, 2.7)
        for cert, spec in zip(sa.reversed_ui_sweep(A, B, sqrt(), specs), specs):
            single = sa.reversed_ui_norm_check(A, B, sqrt(), spec)
            assert cert.lhs == single.lhs and cert.rhs == single.rhs

    @given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(0, len(FNS) - 1))
    def test_property_all_norms(self, seed, n, i):
        A, B = psd_pair(seed, n)
        for cert in sa.reversed_ui_sweep(A, B, FNS[i], ui_sweep(n, 4.0)):
            assert cert.holds(1e-9), (str(cert.norm_spec), cert.lhs, cert.rhs)
