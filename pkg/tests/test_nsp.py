import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nspradar.errors import DomainError, NumericalError, ShapeError
from nspradar.nsp import (
    identity_projector,
    null_projector,
    project_covariance,
    select_null_mask,
    svd,
)

from oracles import gram_schmidt_complement, random_complex, steering_loop


def assert_projector_axioms(p, h):
    m = p.matrix
    assert np.abs(m - m.conj().T).max() <= 1e-12
    assert np.linalg.norm(m @ m - m) <= 1e-10
    eig = np.linalg.eigvalsh(m)
    assert np.all(np.minimum(np.abs(eig), np.abs(eig - 1)) <= 1e-8)
    assert abs(np.trace(m).real - p.rank) <= 1e-8
    assert np.linalg.norm(h @ m) <= 1e-8 * max(1.0, np.linalg.norm(h))


class TestSvd:
    def test_identity(self):
        np.testing.assert_allclose(svd(np.eye(2)).sigma, [1, 1])

    def test_zero(self):
        dec = svd(np.zeros((2, 3)))
        np.testing.assert_array_equal(dec.sigma, [0, 0])
        np.testing.assert_allclose(dec.v.conj().T @ dec.v, np.eye(3), atol=1e-12)

    def test_reconstruction_wide(self, rng):
        a = random_complex(rng, (3, 5))
        dec = svd(a)
        assert dec.v.shape == (5, 5) and dec.u.shape == (3, 3)
        s = np.zeros((3, 5))
        s[:3, :3] = np.diag(dec.sigma)
        resid = np.linalg.norm(a - dec.u @ s @ dec.v.conj().T)
        assert resid <= 1e-10 * np.linalg.norm(a)
        np.testing.assert_allclose(dec.u.conj().T @ dec.u, np.eye(3), atol=1e-10)
        np.testing.assert_allclose(dec.v.conj().T @ dec.v, np.eye(5), atol=1e-10)
        assert np.all(np.diff(dec.sigma) <= 0)

    def test_non_finite(self):
        with pytest.raises(NumericalError):
            svd(np.array([[np.nan, 1.0]]))

    def test_empty_rows(self):
        dec = svd(np.zeros((0, 4)))
        np.testing.assert_array_equal(dec.v, np.eye(4))


class TestNullMask:
    def test_two_nonzeros(self):
        np.testing.assert_array_equal(select_null_mask([5, 3, 0, 0], 4), [0, 0, 1, 1])

    def test_zero_channel(self):
        np.testing.assert_array_equal(select_null_mask([0, 0], 3), [1, 1, 1])

    def test_relative_threshold(self):
        np.testing.assert_array_equal(select_null_mask([1, 1e-14], 2, 1e-10), [0, 1])

    def test_padding_beyond_p(self):
        np.testing.assert_array_equal(select_null_mask([2.0], 4), [0, 1, 1, 1])

    def test_unsorted_rejected(self):
        with pytest.raises(DomainError):
            select_null_mask([1, 2], 2)

    def test_too_many_values(self):
        with pytest.raises(ShapeError):
            select_null_mask([3, 2, 1], 2)


class TestNullProjector:
    def test_zero_matrix_gives_identity(self):
        p = null_projector(np.zeros((3, 4)))
        np.testing.assert_array_equal(p.matrix, np.eye(4))
        assert p.rank == 4

    def test_no_rows_gives_identity(self):
        p = null_projector(np.zeros((0, 5), complex))
        np.testing.assert_array_equal(p.matrix, np.eye(5))

    def test_single_row_closed_form(self):
        a = steering_loop(-42.0, 7)
        p = null_projector(a.conj()[np.newaxis, :])
        expected = np.eye(7) - np.outer(a, a.conj()) / np.vdot(a, a).real
        np.testing.assert_allclose(p.matrix, expected, atol=1e-10)
        assert p.rank == 6

    def test_random_full_row_rank(self, rng):
        h = random_complex(rng, (3, 8))
        p = null_projector(h)
        assert p.rank == 5
        assert np.linalg.norm(h @ p.matrix) <= 1e-8
        oracle = gram_schmidt_complement(h)
        assert np.linalg.norm(p.matrix - oracle) <= 1e-8

    def test_rank_deficient(self, rng):
        b = random_complex(rng, (2, 6))
        h = random_complex(rng, (4, 2)) @ b  # rank 2
        p = null_projector(h)
        assert p.rank == 4
        assert_projector_axioms(p, h)

    def test_immutable(self, rng):
        p = null_projector(random_complex(rng, (1, 3)))
        with pytest.raises(ValueError):
            p.matrix[0, 0] = 2

    def test_tol_recorded(self, rng):
        assert null_projector(random_complex(rng, (1, 3)), tol_rel=1e-6).tol == 1e-6

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 12), st.integers(0, 2**32 - 1), st.data())
    def test_axioms_and_oracle(self, m_d, seed, data):
        k = data.draw(st.integers(0, m_d - 1))
        h = random_complex(np.random.default_rng(seed), (k, m_d))
        p = null_projector(h)
        assert_projector_axioms(p, h)
        assert np.linalg.norm(p.matrix - gram_schmidt_complement(h)) <= 1e-8

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 10), st.integers(0, 2**32 - 1), st.data())
    def test_adding_row_never_increases_rank(self, m_d, seed, data):
        rng = np.random.default_rng(seed)
        k = data.draw(st.integers(0, m_d))
        h = random_complex(rng, (k, m_d))
        extra = random_complex(rng, (1, m_d))
        assert null_projector(np.vstack([h, extra])).rank <= null_projector(h).rank


class TestProjectCovariance:
    def test_identity_projector(self, rng):
        x = random_complex(rng, (4, 4))
        r = x @ x.conj().T
        np.testing.assert_allclose(project_covariance(identity_projector(4), r), r, atol=1e-12)

    def test_zero_projector(self, rng):
        x = random_complex(rng, (3, 3))
        r = x @ x.conj().T
        h = np.eye(3)
        np.testing.assert_array_equal(project_covariance(null_projector(h), r), np.zeros((3, 3)))

    def test_null_space_covariance_unchanged(self, rng):
        h = random_complex(rng, (2, 6))
        # basis of null(h) from the SVD oracle-free route: solve via QR of h^H
        q, _ = np.linalg.qr(h.conj().T, mode="complete")
        a = q[:, 2:] @ random_complex(rng, 4)
        r = np.outer(a, a.conj())
        np.testing.assert_allclose(project_covariance(null_projector(h), r), r, atol=1e-10)

    def test_result_psd_and_trace_bound(self, rng):
        x = random_complex(rng, (5, 5))
        r = x @ x.conj().T
        out = project_covariance(null_projector(random_complex(rng, (2, 5))), r)
        np.testing.assert_allclose(out, out.conj().T, atol=1e-12)
        assert np.linalg.eigvalsh(out).min() >= -1e-10
        assert np.trace(out).real <= np.trace(r).real + 1e-10

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            project_covariance(identity_projector(3), np.eye(2))

    def test_non_hermitian_rejected(self):
        with pytest.raises(DomainError):
            project_covariance(identity_projector(2), np.array([[1, 1j], [1j, 1]]))
