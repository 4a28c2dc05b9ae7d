import numpy as np
import pytest

from schurmult import (
    as_matrix,
    herm_eig,
    load_golden,
    polar,
    psd_check,
    psd_sqrt,
    rank_of,
    span_basis,
)
from schurmult.errors import (
    DimensionMismatchError,
    EmptyInputError,
    NotHermitianError,
    NotPSDError,
    NotSquareError,
)
from schurmult.schur import schur_product

from conftest import random_complex, random_hermitian, random_psd


class TestHermEig:
    def test_identity(self):
        e = herm_eig(np.eye(3))
        assert np.allclose(e.eigenvalues, [1, 1, 1])
        assert np.allclose(e.eigenvectors @ e.eigenvectors.conj().T, np.eye(3))

    def test_symmetric_flip(self):
        e = herm_eig(np.array([[0, 1], [1, 0]], dtype=complex))
        assert np.allclose(e.eigenvalues, [-1.0, 1.0])

    def test_random_reconstruction(self, rng):
        h = random_hermitian(rng, 6)
        e = herm_eig(h)
        res = np.linalg.norm(e.eigenvectors @ np.diag(e.eigenvalues) @ e.eigenvectors.conj().T - h)
        assert res <= 1e-10 * max(1.0, np.linalg.norm(h))

    def test_reconstruction_property(self, rng):
        # module invariant: 1000 random Hermitian inputs up to size 16
        for _ in range(1000):
            n = int(rng.integers(1, 17))
            h = random_hermitian(rng, n)
            e = herm_eig(h)
            res = np.linalg.norm(
                e.eigenvectors @ np.diag(e.eigenvalues) @ e.eigenvectors.conj().T - h)
            assert res <= 1e-10 * max(1.0, np.linalg.norm(h))
            orth = np.linalg.norm(
                e.eigenvectors.conj().T @ e.eigenvectors - np.eye(n))
            assert orth <= 1e-12 * n

    def test_eigenvalues_ascending(self, rng):
        e = herm_eig(random_hermitian(rng, 8))
        assert np.all(np.diff(e.eigenvalues) >= 0)

    def test_not_square(self):
        with pytest.raises(NotSquareError):
            herm_eig(np.ones((2, 3)))

    def test_not_hermitian(self):
        with pytest.raises(NotHermitianError):
            herm_eig(np.array([[0, 1], [0, 0]], dtype=complex))


class TestSpanBasis:
    def test_two_unit_vectors(self):
        sb = span_basis([np.array([1, 0, 0]), np.array([0, 1, 0])])
        assert sb.rank == 2
        assert np.allclose(sb.basis.conj().T @ sb.basis, np.eye(2))

    def test_proportional_vectors(self):
        v = np.array([1.0, 2.0, 3j])
        sb = span_basis([v, 2 * v])
        assert sb.rank == 1

    def test_golden_columns_span_two(self):
        l_fac = load_golden("unit_columns_2x4")
        sb = span_basis(l_fac)
        assert sb.rank == 2

    def test_projection_recovers_vectors(self, rng):
        vecs = [random_complex(rng, 5, 1).ravel() for _ in range(3)]
        sb = span_basis(vecs)
        proj = sb.basis @ sb.basis.conj().T
        for v in vecs:
            assert np.linalg.norm(proj @ v - v) <= 1e-10 * np.linalg.norm(v)

    def test_rank_matches_rank_of(self, rng):
        for _ in range(50):
            k = int(rng.integers(1, 6))
            n = int(rng.integers(1, 7))
            a = random_complex(rng, k, n)
            assert span_basis(a).rank == rank_of(a)

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            span_basis([])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            span_basis([np.ones(2), np.ones(3)])


class TestPsdSqrt:
    def test_identity(self):
        assert np.allclose(psd_sqrt(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        f = psd_sqrt(np.diag([4.0, 9.0]))
        assert np.allclose(f, np.diag([2.0, 3.0]))

    def test_golden_gram_root(self):
        x = load_golden("extremal_q4_rank2")
        f = psd_sqrt(x)
        assert np.linalg.norm(f @ f - x) <= 1e-9 * max(1.0, np.linalg.norm(x))
        assert rank_of(f) == rank_of(x) == 2

    def test_square_is_idempotent_and_rank_preserving(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 7))
            x = random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
            f = psd_sqrt(x)
            assert np.linalg.norm(f @ f - x) <= 1e-9 * max(1.0, np.linalg.norm(x))
            assert rank_of(f) == rank_of(x)

    def test_rejects_indefinite(self):
        with pytest.raises(NotPSDError):
            psd_sqrt(np.array([[1, 2], [2, 1]], dtype=complex))


class TestPolar:
    def test_unitary_input(self, rng):
        q, _ = np.linalg.qr(random_complex(rng, 4, 4))
        w, f = polar(q)
        assert np.allclose(w, q)
        assert np.allclose(f, np.eye(4))

    def test_negative_scalar(self):
        w, f = polar(np.array([[-2.0]]))
        assert np.allclose(w, [[-1.0]])
        assert np.allclose(f, [[2.0]])

    def test_rectangular_reconstruction(self, rng):
        a = random_complex(rng, 3, 4)
        w, f = polar(a)
        assert np.linalg.norm(a - w @ f) <= 1e-9 * max(1.0, np.linalg.norm(a))

    def test_partial_isometry_and_sqrt_agreement(self, rng):
        for _ in range(30):
            m = int(rng.integers(1, 6))
            n = int(rng.integers(1, 6))
            a = random_complex(rng, m, n)
            w, f = polar(a)
            assert np.linalg.norm(a - w @ f) <= 1e-9 * max(1.0, np.linalg.norm(a))
            ww = w @ w.conj().T
            assert np.linalg.norm(ww @ ww - ww) <= 1e-10
            ww2 = w.conj().T @ w
            assert np.linalg.norm(ww2 @ ww2 - ww2) <= 1e-10
            assert np.linalg.norm(f - psd_sqrt(a.conj().T @ a)) <= 1e-8 * max(
                1.0, np.linalg.norm(a) ** 2)


class TestRankAndPsdCheck:
    def test_zero_matrix(self):
        assert rank_of(np.zeros((3, 4))) == 0

    def test_golden_gram_rank_two(self):
        assert rank_of(load_golden("extremal_q4_rank2")) == 2

    def test_outer_product(self, rng):
        u = random_complex(rng, 5, 1)
        v = random_complex(rng, 4, 1)
        assert rank_of(u @ v.conj().T) == 1

    def test_psd_check_identity(self):
        ok, mn = psd_check(np.eye(3))
        assert ok and abs(mn - 1.0) < 1e-12

    def test_psd_check_indefinite(self):
        ok, mn = psd_check(np.array([[1, 2], [2, 1]], dtype=complex))
        assert not ok
        assert abs(mn + 1.0) < 1e-12

    def test_schur_product_of_psd_is_psd(self, rng):
        x = random_psd(rng, 5)
        y = random_psd(rng, 5)
        ok, _ = psd_check(schur_product(x, y))
        assert ok

    def test_not_square(self):
        with pytest.raises(NotSquareError):
            psd_check(np.ones((2, 3)))


class TestAsMatrix:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            as_matrix(np.array([[np.nan, 0.0]]))

    def test_column_vector_promotion(self):
        m = as_matrix(np.array([1.0, 2.0]))
        assert m.shape == (2, 1)
