"""Tests for the triple-spectral calculus."""

import numpy as np
import pytest

from peircelab import backend
from peircelab.errors import NotNormOne, ShapeMismatch
from peircelab.models import TripleModel, triple_product
from peircelab.peirce import Tripotent, peirce2_algebra
from peircelab.spectral import (generalized_inverse, is_regular, odd_calculus,
                                polar_decomposition, range_tripotent, support_tripotent,
                                triple_spectrum)

E11 = np.array([[1, 0], [0, 0]], dtype=complex)
E12 = np.array([[0, 1], [0, 0]], dtype=complex)
E22 = np.array([[0, 0], [0, 1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
CSTAR2 = TripleModel.cstar(2)


class TestTripleSpectrum:
    def test_diagonal(self):
        spec = triple_spectrum(CSTAR2, np.diag([3.0, 1.0]).astype(complex))
        assert spec.values == (1.0, 3.0)
        assert not spec.includes_zero

    def test_zero_element(self):
        spec = triple_spectrum(CSTAR2, np.zeros((2, 2)))
        assert spec.values == ()
        assert not spec.includes_zero

    def test_nonzero_tripotent(self):
        spec = triple_spectrum(CSTAR2, E12)
        assert spec.values == (1.0,)
        assert spec.includes_zero

    def test_max_is_the_norm(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        spec = triple_spectrum(TripleModel.cstar(4), a)
        assert spec.values[-1] == pytest.approx(backend.op_norm(a))

    def test_merges_repeated_values(self):
        spec = triple_spectrum(CSTAR2, np.diag([2.0, 2.0]).astype(complex))
        assert spec.values == (2.0,)


class TestOddCalculus:
    def test_cube_fixes_tripotents(self):
        np.testing.assert_allclose(odd_calculus(CSTAR2, E12, lambda t: t ** 3), E12,
                                   atol=1e-14)

    def test_cube_root(self):
        out = odd_calculus(CSTAR2, 8 * E12, lambda t: t ** (1.0 / 3.0))
        np.testing.assert_allclose(out, 2 * E12, atol=1e-12)

    def test_identity_function(self):
        rng = np.random.default_rng(1)
        a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        model = TripleModel.rectangular(3, 4)
        np.testing.assert_allclose(odd_calculus(model, a, lambda t: t), a, atol=1e-12)

    def test_requires_vanishing_at_zero(self):
        with pytest.raises(ValueError):
            odd_calculus(CSTAR2, E12, lambda t: t + 1.0)


class TestRangeTripotent:
    def test_nilpotent(self):
        e = range_tripotent(CSTAR2, 2 * E12)
        np.testing.assert_allclose(np.abs(e.element), np.abs(E12), atol=1e-12)
        np.testing.assert_allclose(e.element, E12, atol=1e-12)

    def test_fixes_tripotents(self):
        np.testing.assert_allclose(range_tripotent(CSTAR2, E12).element, E12, atol=1e-12)

    def test_zero(self):
        np.testing.assert_allclose(range_tripotent(CSTAR2, np.zeros((2, 2))).element, 0.0)

    def test_element_positive_in_its_peirce2(self):
        rng = np.random.default_rng(2)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        model = TripleModel.cstar(3)
        alg = peirce2_algebra(model, range_tripotent(model, a))
        sa, margin = alg.positivity(a)
        assert sa <= 1e-12
        assert margin >= -1e-12


class TestSupportTripotent:
    def test_fixes_tripotents(self):
        np.testing.assert_allclose(support_tripotent(CSTAR2, E12).element, E12, atol=1e-12)

    def test_kills_small_singular_values(self):
        u = support_tripotent(CSTAR2, np.diag([1.0, 0.5]).astype(complex))
        np.testing.assert_allclose(u.element, np.diag([1.0, 0.0]), atol=1e-12)

    def test_keeps_unit_block(self):
        u = support_tripotent(CSTAR2, I2)
        np.testing.assert_allclose(u.element, I2, atol=1e-12)

    def test_requires_norm_one(self):
        with pytest.raises(NotNormOne):
            support_tripotent(CSTAR2, np.diag([2.0, 0.0]).astype(complex))


class TestPolarDecomposition:
    def test_nilpotent_by_hand(self):
        pol = polar_decomposition(CSTAR2, 2 * E12)
        np.testing.assert_allclose(pol.isometry.element, E12, atol=1e-12)
        np.testing.assert_allclose(pol.modulus, np.diag([0.0, 2.0]), atol=1e-12)
        np.testing.assert_allclose(pol.lp, E11, atol=1e-12)
        np.testing.assert_allclose(pol.rp, E22, atol=1e-12)

    def test_positive_case(self):
        a = np.diag([2.0, 0.0]).astype(complex)
        pol = polar_decomposition(CSTAR2, a)
        np.testing.assert_allclose(pol.isometry.element, np.diag([1.0, 0.0]), atol=1e-12)
        np.testing.assert_allclose(pol.modulus, a, atol=1e-12)

    def test_unitary_case(self):
        rng = np.random.default_rng(3)
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        u, _, vh = np.linalg.svd(g)
        w = u @ vh
        pol = polar_decomposition(TripleModel.cstar(3), w)
        np.testing.assert_allclose(pol.isometry.element, w, atol=1e-12)
        np.testing.assert_allclose(pol.modulus, np.eye(3), atol=1e-12)

    def test_requires_square_model(self):
        with pytest.raises(ShapeMismatch):
            polar_decomposition(TripleModel.rectangular(2, 3), np.ones((2, 3)))


class TestGeneralizedInverse:
    def test_rank_deficient_diagonal(self):
        a = np.diag([2.0, 0.0]).astype(complex)
        assert is_regular(CSTAR2, a)
        np.testing.assert_allclose(generalized_inverse(CSTAR2, a), np.diag([0.5, 0.0]),
                                   atol=1e-12)

    def test_tripotent_is_its_own_inverse(self):
        np.testing.assert_allclose(generalized_inverse(CSTAR2, E12), E12, atol=1e-12)

    def test_invertible_diagonal(self):
        np.testing.assert_allclose(generalized_inverse(CSTAR2, np.diag([2.0, 1.0])),
                                   np.diag([0.5, 1.0]), atol=1e-12)

    def test_defining_identities_random(self):
        rng = np.random.default_rng(4)
        model = TripleModel.cstar(4)
        for _ in range(10):
            a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            a /= backend.op_norm(a)
            d = generalized_inverse(model, a)
            np.testing.assert_allclose(triple_product(model, a, d, a), a, atol=1e-9)
            np.testing.assert_allclose(triple_product(model, d, a, d), d, atol=1e-9)

    def test_zero_is_regular_with_zero_inverse(self):
        z = np.zeros((2, 2))
        assert is_regular(CSTAR2, z)
        np.testing.assert_allclose(generalized_inverse(CSTAR2, z), z)
