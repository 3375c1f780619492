import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from matineq import linalg
from matineq.errors import DimensionError, DomainError, SingularMatrixError
from matineq.concave import sqrt, identity, power, log1p
from tests.conftest import pd, diag
from tests.oracles import cofactor_det, fn_of_matrix


class TestValidation:
    def test_as_hermitian_symmetrizes_exactly(self, rng):
        M = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        H = linalg.as_hermitian(M)
        assert np.array_equal(H, H.conj().T)
        assert np.all(H.diagonal().imag == 0)

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            linalg.as_hermitian(np.ones((2, 3)))

    def test_rejects_nan(self):
        with pytest.raises(DomainError):
            linalg.as_hermitian(np.array([[1.0, np.nan], [np.nan, 1.0]]))

    def test_empty_rejected(self):
        with pytest.raises(DimensionError):
            linalg.as_complex_matrix(np.zeros((0, 0)))


class TestSpectral:
    def test_reconstruction(self, rng):
        for n in range(1, 7):
            G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            M = linalg.as_hermitian(G + G.conj().T)
            dec = linalg.spectral_decompose(M)
            assert np.allclose(dec.reconstruct(), M, rtol=1e-10, atol=1e-12)
            assert np.all(np.diff(dec.eigenvalues) <= 0)
            assert np.allclose(dec.eigenvectors.conj().T @ dec.eigenvectors, np.eye(n), atol=1e-12)

    def test_eigenvalues_of_diagonal(self):
        dec = linalg.spectral_decompose(diag(3.0, -1.0, 2.0))
        assert dec.eigenvalues.tolist() == [3.0, 2.0, -1.0]
        assert dec.lambda_max == 3.0 and dec.lambda_min == -1.0

    def test_gram_is_psd(self, rng):
        G = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
        assert linalg.is_positive_semidefinite(G @ G.conj().T)
        assert not linalg.is_positive_definite(G @ G.conj().T)

    def test_loewner(self):
        assert linalg.loewner_le(diag(1.0, 2.0), diag(1.0, 3.0))
        assert not linalg.loewner_le(diag(1.0, 2.0), diag(0.5, 3.0))


class TestFunctionalCalculus:
    @pytest.mark.parametrize("f", [sqrt(), power(0.3), log1p(), identity()], ids=lambda f: f.id)
    def test_matches_hand_eigendecomposition(self, rng, f):
        M = pd(rng, 4)
        assert np.allclose(linalg.apply_fn(M, f), fn_of_matrix(M, f.eval), rtol=1e-10, atol=1e-12)

    def test_sqrt_squares_back(self, rng):
        M = pd(rng, 5)
        R = linalg.sqrt_psd(M)
        assert np.allclose(R @ R, M, rtol=1e-10)

    def test_inv_sqrt(self, rng):
        M = pd(rng, 4)
        R = linalg.inv_sqrt(M)
        assert np.allclose(R @ M @ R, np.eye(4), atol=1e-10)

    def test_inv_sqrt_singular(self):
        with pytest.raises(SingularMatrixError):
            linalg.inv_sqrt(diag(1.0, 0.0))

    def test_negative_spectrum_rejected(self):
        with pytest.raises(DomainError):
            linalg.apply_fn(diag(1.0, -0.5), sqrt())

    def test_rounding_negative_clamped(self):
        out = linalg.apply_fn(diag(1.0, -1e-14), sqrt())
        assert out[1, 1] == 0

    def test_unitary_similarity(self, rng):
        M = pd(rng, 3)
        Q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        lhs = linalg.apply_fn(Q @ M @ Q.conj().T, sqrt())
        rhs = Q @ linalg.apply_fn(M, sqrt()) @ Q.conj().T
        assert np.allclose(lhs, rhs, atol=1e-12)


class TestDeterminants:
    def test_log_det_vs_cofactor(self, rng):
        for n in range(1, 6):
            M = pd(rng, n)
            assert linalg.log_det(M) == pytest.approx(np.log(cofactor_det(M).real), rel=1e-10, abs=1e-12)

    def test_log_det_requires_pd(self):
        with pytest.raises(SingularMatrixError):
            linalg.log_det(diag(1.0, 0.0))

    def test_log_det_no_overflow(self):
        M = 1e200 * np.eye(5)
        assert linalg.log_det(M) == pytest.approx(5 * np.log(1e200))

    def test_log_abs_det_general(self, rng):
        M = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert linalg.log_abs_det(M) == pytest.approx(np.log(abs(cofactor_det(M))), rel=1e-10)

    def test_leading_minors(self, rng):
        M = pd(rng, 5)
        expected = [np.log(cofactor_det(M[:k, :k]).real) for k in range(1, 6)]
        assert np.allclose(linalg.leading_log_minors(M), expected, rtol=1e-10)

    def test_block_embed_1x1(self):
        E = linalg.block_embed(np.eye(1), np.eye(1))
        assert E.shape == (2, 2)
        assert cofactor_det(E).real == pytest.approx(2.0)

    def test_block_embed_is_modulus_squared(self, rng):
        A, B = pd(rng, 3), pd(rng, 3)
        assert cofactor_det(linalg.block_embed(A, B)).real == pytest.approx(abs(cofactor_det(A + 1j * B)) ** 2, rel=1e-10)

    def test_principal_submatrix(self):
        M = np.arange(9.0).reshape(3, 3)
        assert np.array_equal(linalg.principal_submatrix(M, 2), M[:2, :2])
        with pytest.raises(DimensionError):
            linalg.principal_submatrix(M, 4)

    def test_solve_trace(self, rng):
        A, B = pd(rng, 4), pd(rng, 4)
        assert linalg.solve_trace(A, B) == pytest.approx(np.trace(A @ np.linalg.inv(B)).real, rel=1e-10)


class TestPairIO:
    def test_roundtrip(self, tmp_path, rng):
        A, B = pd(rng, 3), pd(rng, 3)
        A, B = linalg.as_hermitian(A), linalg.as_hermitian(B)
        path = tmp_path / "pair.json"
        linalg.save_pair(path, A, B)
        A2, B2 = linalg.load_pair(path)
        assert np.array_equal(A, A2) and np.array_equal(B, B2)
        obj = json.loads(path.read_text())
        assert obj["dim"] == 3

    def test_rejects_non_hermitian(self):
        obj = {"dim": 2, "A": [[[1, 0], [2, 0]], [[0, 0], [1, 0]]], "B": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
        with pytest.raises(DomainError):
            linalg.pair_from_json(obj)


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_log_det_additive_property(n, seed):
    r = np.random.default_rng(seed)
    A, B = pd(r, n), pd(r, n)
    AB = linalg.as_hermitian(A @ np.linalg.inv(B) @ A)
    assert linalg.log_det(AB) == pytest.approx(2 * linalg.log_det(A) - linalg.log_det(B), abs=1e-7)
