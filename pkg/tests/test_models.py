"""Tests for the triple models and their products."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from peircelab import backend, models
from peircelab.errors import ShapeMismatch
from peircelab.models import TripleModel, jordan_ops, triple_product

E11 = np.array([[1, 0], [0, 0]], dtype=complex)
E12 = np.array([[0, 1], [0, 0]], dtype=complex)
E22 = np.array([[0, 0], [0, 1]], dtype=complex)
I2 = np.eye(2, dtype=complex)

CSTAR2 = TripleModel.cstar(2)
JB2 = TripleModel.jbstar(2)
RECT12 = TripleModel.rectangular(1, 2)


class TestTripleProduct:
    def test_identity_tripotent(self):
        np.testing.assert_allclose(triple_product(CSTAR2, I2, I2, I2), I2)

    def test_rectangular_evaluation(self):
        a = np.array([[1.0, 0.0]], dtype=complex)
        b = np.array([[0.0, 1.0]], dtype=complex)
        np.testing.assert_allclose(triple_product(RECT12, a, b, b), [[0.5, 0.0]])

    def test_jbstar_matrix_units(self):
        # expand the Jordan formula; E11 o E22 = 0
        out = triple_product(JB2, E11, I2, E22)
        np.testing.assert_allclose(out, np.zeros((2, 2)), atol=1e-15)

    def test_models_agree_on_full_matrix_algebra(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            a, b, c = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
                       for _ in range(3))
            lhs = triple_product(TripleModel.jbstar(3), a, b, c)
            rhs = triple_product(TripleModel.cstar(3), a, b, c)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            triple_product(CSTAR2, I2, I2, np.eye(3, dtype=complex))

    @settings(max_examples=20, deadline=None)
    @given(arrays(np.complex128, (2, 2),
                  elements=st.complex_numbers(max_magnitude=10, allow_nan=False,
                                              allow_infinity=False)),
           arrays(np.complex128, (2, 2),
                  elements=st.complex_numbers(max_magnitude=10, allow_nan=False,
                                              allow_infinity=False)),
           arrays(np.complex128, (2, 2),
                  elements=st.complex_numbers(max_magnitude=10, allow_nan=False,
                                              allow_infinity=False)))
    def test_outer_symmetry_and_nonexpansive(self, a, b, c):
        abc = triple_product(CSTAR2, a, b, c)
        cba = triple_product(CSTAR2, c, b, a)
        np.testing.assert_allclose(abc, cba, atol=1e-9)
        bound = backend.op_norm(a) * backend.op_norm(b) * backend.op_norm(c)
        assert backend.op_norm(abc) <= bound * (1 + 1e-12) + 1e-12

    def test_conjugate_linear_in_middle(self):
        rng = np.random.default_rng(1)
        a, b, c = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                   for _ in range(3))
        lam = 0.3 - 0.8j
        lhs = triple_product(CSTAR2, a, lam * b, c)
        np.testing.assert_allclose(lhs, np.conj(lam) * triple_product(CSTAR2, a, b, c))


class TestJordanOps:
    def test_matrix_unit_arithmetic(self):
        ops = jordan_ops(JB2, E11, E12)
        np.testing.assert_allclose(ops.product, 0.5 * E12)
        np.testing.assert_allclose(ops.t_of_b, 0.5 * E12)

    def test_u_map_of_projection_is_compression(self):
        rng = np.random.default_rng(2)
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        h = g + g.conj().T
        w, v = np.linalg.eigh(h)
        vk = v[:, w > 0]
        p = vk @ vk.conj().T
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        ops = jordan_ops(TripleModel.jbstar(3), p, b)
        np.testing.assert_allclose(ops.u_of_b, p @ b @ p, atol=1e-12)

    def test_u_map_of_identity(self):
        b = np.array([[1, 2 + 1j], [0, 3]], dtype=complex)
        np.testing.assert_allclose(jordan_ops(JB2, I2, b).u_of_b, b)

    def test_square_model_required(self):
        with pytest.raises(ShapeMismatch):
            jordan_ops(RECT12, np.ones((1, 2)), np.ones((1, 2)))


class TestMaterialization:
    @pytest.mark.parametrize("model", [CSTAR2, JB2, TripleModel.rectangular(2, 3),
                                       TripleModel.jbstar(3)])
    def test_L_agrees_with_direct_evaluation(self, model):
        rng = np.random.default_rng(7)
        a = rng.standard_normal(model.shape) + 1j * rng.standard_normal(model.shape)
        b = rng.standard_normal(model.shape) + 1j * rng.standard_normal(model.shape)
        lmap = models.materialize_L(model, a, b)
        for _ in range(5):
            x = rng.standard_normal(model.shape) + 1j * rng.standard_normal(model.shape)
            direct = triple_product(model, a, b, x)
            scale = max(1.0, backend.op_norm(direct))
            assert backend.op_norm(lmap.apply(x) - direct) <= 1e-12 * scale

    @pytest.mark.parametrize("model", [CSTAR2, JB2, TripleModel.rectangular(2, 3)])
    def test_Q_agrees_with_direct_evaluation(self, model):
        rng = np.random.default_rng(8)
        a = rng.standard_normal(model.shape) + 1j * rng.standard_normal(model.shape)
        qmap = models.materialize_Q(model, a)
        for _ in range(5):
            x = rng.standard_normal(model.shape) + 1j * rng.standard_normal(model.shape)
            direct = triple_product(model, a, x, a)
            scale = max(1.0, backend.op_norm(direct))
            assert backend.op_norm(qmap.apply(x) - direct) <= 1e-12 * scale

    def test_L_of_zero_is_zero_map(self):
        b = np.array([[1, 2], [3, 4]], dtype=complex)
        assert models.materialize_L(CSTAR2, np.zeros((2, 2)), b).op_norm == 0.0

    def test_L_of_unitary_tripotent_is_identity(self):
        lmap = models.materialize_L(CSTAR2, I2, I2)
        assert backend.op_norm(lmap.matrix - np.eye(8)) <= 1e-14

    def test_Q_of_matrix_unit_has_rank_one_image(self):
        qmap = models.materialize_Q(CSTAR2, E11)
        basis = backend.image_basis(qmap)
        assert basis.shape[0] == 1
        assert abs(abs(backend.trace_inner(basis[0], E11)) - 1.0) <= 1e-12

    def test_u_operator_matches_u_map(self):
        rng = np.random.default_rng(9)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        m3 = TripleModel.jbstar(3)
        np.testing.assert_allclose(models.u_operator(m3, a).apply(x),
                                   models.u_map(a, x), atol=1e-12)


class TestModelDescriptor:
    def test_square_kinds_must_be_square(self):
        with pytest.raises(ValueError):
            TripleModel("cstar", 2, 3)
        with pytest.raises(ValueError):
            TripleModel("bogus", 2, 2)

    def test_matrix_units_orthonormal(self):
        units = RECT12.matrix_units()
        flat = units.reshape(len(units), -1)
        np.testing.assert_allclose(flat @ flat.conj().T, np.eye(len(units)))
