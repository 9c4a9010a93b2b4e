"""Tests for the dense linear algebra substrate."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from peircelab import backend
from peircelab.backend import RealifiedMap, hermitian_eigen, svd
from peircelab.errors import NotHermitian

E11 = np.array([[1, 0], [0, 0]], dtype=complex)
E12 = np.array([[0, 1], [0, 0]], dtype=complex)
E21 = np.array([[0, 0], [1, 0]], dtype=complex)
E22 = np.array([[0, 0], [0, 1]], dtype=complex)


class TestHermitianEigen:
    def test_already_diagonal(self):
        w, v = hermitian_eigen(np.diag([3.0, 1.0]).astype(complex))
        np.testing.assert_allclose(w, [3.0, 1.0])
        np.testing.assert_allclose(np.abs(v), np.eye(2), atol=1e-14)

    def test_zero_matrix(self):
        w, _ = hermitian_eigen(np.zeros((3, 3), dtype=complex))
        np.testing.assert_allclose(w, 0.0)

    def test_off_diagonal(self):
        # characteristic polynomial t^2 - 1 by hand
        w, v = hermitian_eigen(np.array([[0, 1], [1, 0]], dtype=complex))
        np.testing.assert_allclose(w, [1.0, -1.0], atol=1e-14)
        np.testing.assert_allclose(v @ v.conj().T, np.eye(2), atol=1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))
        with pytest.raises(NotHermitian):
            hermitian_eigen(np.zeros((2, 3), dtype=complex))

    def test_eigenvector_unitarity_random(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            n = int(rng.integers(1, 9))
            g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            w, v = hermitian_eigen(g + g.conj().T)
            assert backend.op_norm(v.conj().T @ v - np.eye(n)) <= 1e-10
            assert all(w[i] >= w[i + 1] for i in range(n - 1))


class TestSVD:
    def test_identity(self):
        np.testing.assert_allclose(svd(np.eye(4, dtype=complex)).singular, 1.0)

    def test_nilpotent(self):
        # a^* a = diag(0, 4)
        res = svd(2 * E12)
        np.testing.assert_allclose(res.singular, [2.0, 0.0], atol=1e-14)

    def test_diagonal_positive(self):
        np.testing.assert_allclose(svd(np.diag([3.0, 1.0]).astype(complex)).singular, [3.0, 1.0])

    @settings(max_examples=25, deadline=None)
    @given(st.integers(1, 16), st.integers(1, 16), st.integers(0, 2 ** 31 - 1))
    def test_reconstruction_random(self, m, n, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        res = svd(a)
        assert backend.op_norm(res.reconstruct() - a) <= 1e-10 * max(1.0, backend.op_norm(a))
        s = res.singular
        assert all(s[i] >= s[i + 1] for i in range(len(s) - 1))


class TestKernel:
    def test_zero_map_full_kernel(self):
        fmap = RealifiedMap.zero((2, 2))
        basis = backend.kernel_basis(fmap)
        assert basis.shape[0] == 4

    def test_identity_map_trivial_kernel(self):
        fmap = RealifiedMap.identity((2, 2))
        assert backend.kernel_basis(fmap).shape[0] == 0

    def test_left_multiplication_kernel(self):
        # solve E11 x = 0 entrywise: x must vanish on the first row
        fmap = RealifiedMap.from_function(lambda x: E11 @ x, (2, 2))
        basis = backend.kernel_basis(fmap)
        assert basis.shape[0] == 2
        from peircelab.subspaces import Subspace
        sub = Subspace(basis, 1e-9)
        for target in (E21, E22):
            assert sub.residual(target) <= 1e-10
        assert sub.residual(E11) > 0.5

    def test_kernel_is_complex_subspace(self):
        # kernels of conjugate-linear maps are closed under multiplication by i
        fmap = RealifiedMap.from_function(lambda x: E11 @ x.conj().T @ E11, (2, 2))
        basis = backend.kernel_basis(fmap)
        from peircelab.subspaces import Subspace
        sub = Subspace(basis, 1e-9)
        for b in basis:
            assert sub.residual(1j * b) <= 1e-10

    def test_rank_nullity(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
            fmap = RealifiedMap.from_function(lambda x, a=a: a @ x, (m, n), (m, n))
            kdim = backend.kernel_basis(fmap).shape[0]
            rdim = backend.image_basis(fmap).shape[0]
            assert kdim + rdim == m * n


class TestRealification:
    def test_round_trip(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        np.testing.assert_allclose(backend.unrealify(backend.realify(x), (3, 4)), x)

    def test_interleaving_convention(self):
        v = backend.realify(np.array([[1 + 2j, 3 - 4j]]))
        np.testing.assert_allclose(v, [1.0, 2.0, 3.0, -4.0])

    def test_from_complex_linear(self):
        rng = np.random.default_rng(4)
        coeff = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        fmap = RealifiedMap.from_complex(coeff, (2, 3))
        x = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
        expected = (coeff @ x.ravel()).reshape(2, 3)
        np.testing.assert_allclose(fmap.apply(x), expected, atol=1e-12)

    def test_from_complex_conjugating(self):
        rng = np.random.default_rng(6)
        coeff = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        fmap = RealifiedMap.from_complex(coeff, (2, 2), conjugating=True)
        x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        expected = (coeff @ x.conj().ravel()).reshape(2, 2)
        np.testing.assert_allclose(fmap.apply(x), expected, atol=1e-12)


def test_trace_inner_product():
    a = np.array([[1 + 1j, 0], [2, 1j]])
    b = np.array([[1j, 1], [1, 1]])
    assert backend.trace_inner(a, b) == pytest.approx(np.trace(b.conj().T @ a))
