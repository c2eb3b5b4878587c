"""
Tests for liestat.cubic -- canonical components, tensors and skewness operators.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_cubic, random_gram
from liestat.cubic import (
    CubicForm,
    component_count,
    component_indices,
    component_label,
    cubic_from_entries,
    cubic_from_skewness,
    skewness_defects,
    skewness_from_cubic,
    unit_cubics,
)
from liestat.errors import InputError, ValidationError
from liestat.geometry import InnerProduct


class TestComponents:
    def test_counts(self):
        assert [component_count(n) for n in (1, 2, 3, 4)] == [1, 4, 10, 20]

    def test_dim3_order(self):
        labels = [component_label(idx) for idx in component_indices(3)]
        assert labels == ["111", "112", "113", "122", "123", "133", "222", "223", "233", "333"]

    def test_dim2_order(self):
        assert [component_label(idx) for idx in component_indices(2)] == ["111", "112", "122", "222"]


class TestCubicForm:
    def test_wrong_length(self):
        with pytest.raises(InputError):
            CubicForm(3, np.zeros(4))

    def test_values_read_only(self):
        cubic = CubicForm.zero(2)
        with pytest.raises(ValueError):
            cubic.values[0] = 1.0

    def test_tensor_is_totally_symmetric(self, rng):
        t = random_cubic(rng, 3).tensor()
        for perm in [(1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0)]:
            assert_allclose(t, t.transpose(perm))

    def test_tensor_entries(self):
        cubic = CubicForm.from_components(3, {(0, 0, 1): 2.0, (0, 1, 2): -1.0})
        t = cubic.tensor()
        assert t[0, 0, 1] == t[0, 1, 0] == t[1, 0, 0] == 2.0
        assert t[2, 0, 1] == t[1, 2, 0] == -1.0
        assert t[1, 1, 1] == 0.0

    def test_from_tensor_recovers_components(self, rng):
        cubic = random_cubic(rng, 3)
        assert_allclose(CubicForm.from_tensor(cubic.tensor()).values, cubic.values)

    def test_from_tensor_rejects_asymmetric(self):
        t = np.zeros((2, 2, 2))
        t[0, 0, 1] = 1.0
        with pytest.raises(ValidationError) as info:
            CubicForm.from_tensor(t)
        assert info.value.invariant == "cubic-symmetry"

    def test_from_components_any_order(self):
        a = CubicForm.from_components(3, {(2, 0, 0): 1.5})
        b = CubicForm.from_components(3, {(0, 0, 2): 1.5})
        assert_allclose(a.values, b.values)
        assert a.values[2] == 1.5

    def test_from_components_out_of_range(self):
        with pytest.raises(InputError):
            CubicForm.from_components(2, {(0, 0, 2): 1.0})

    def test_items_skip_zero(self):
        cubic = CubicForm.from_components(3, {(0, 0, 0): 1.0, (0, 2, 2): -1.0})
        assert list(cubic.items()) == [((0, 0, 0), 1.0), ((0, 2, 2), -1.0)]

    def test_arithmetic(self):
        a = CubicForm.from_components(2, {(0, 0, 0): 1.0})
        b = CubicForm.from_components(2, {(1, 1, 1): 2.0})
        assert_allclose((2 * a + b).values, [2.0, 0.0, 0.0, 2.0])
        assert (a * 3).norm() == pytest.approx(3.0)

    def test_repr(self):
        cubic = CubicForm.from_components(3, {(0, 0, 0): 1.0, (0, 2, 2): -1.0})
        assert repr(cubic) == "CubicForm(dim=3, C111=1, C133=-1)"
        assert repr(CubicForm.zero(2)) == "CubicForm(dim=2, 0)"


class TestUnitCubics:
    def test_one_per_component(self):
        units = unit_cubics(3)
        assert len(units) == 10
        assert_allclose(np.array([u.values for u in units]), np.eye(10))

    def test_mixed_unit_tensor(self):
        t = unit_cubics(3)[4].tensor()   # C123
        assert np.count_nonzero(t) == 6
        assert t[2, 1, 0] == 1.0


class TestSkewness:
    def test_orthonormal_components(self):
        cubic = CubicForm.from_components(3, {(0, 0, 1): 2.0})
        k = skewness_from_cubic(InnerProduct.orthonormal(3), cubic)
        # K(e1) e1 = 2 e2, K(e1) e2 = K(e2) e1 = 2 e1
        assert_allclose(k[:, 0, 0], [0.0, 2.0, 0.0])
        assert_allclose(k[:, 0, 1], [2.0, 0.0, 0.0])
        assert_allclose(k[:, 1, 0], [2.0, 0.0, 0.0])

    def test_duality_with_gram(self, rng):
        ip = InnerProduct(random_gram(rng, 3))
        cubic = random_cubic(rng, 3)
        k = skewness_from_cubic(ip, cubic)
        assert_allclose(np.einsum("lij,lk->ijk", k, ip.gram), cubic.tensor(), atol=1e-12)

    def test_lower_recovers_cubic(self, rng):
        ip = InnerProduct(random_gram(rng, 3))
        cubic = random_cubic(rng, 3)
        back = cubic_from_skewness(ip, skewness_from_cubic(ip, cubic))
        assert_allclose(back.values, cubic.values, atol=1e-12)

    def test_defects_vanish(self, rng):
        for _ in range(20):
            ip = InnerProduct(random_gram(rng, 3))
            defects = skewness_defects(ip, skewness_from_cubic(ip, random_cubic(rng, 3)))
            assert defects["symmetric"] <= 1e-12
            assert defects["self_adjoint"] <= 1e-12

    def test_rejects_non_symmetric_skewness(self):
        k = np.zeros((2, 2, 2))
        k[0, 0, 1] = 1.0
        with pytest.raises(ValidationError):
            cubic_from_skewness(InnerProduct.orthonormal(2), k)

    def test_rejects_wrong_shape(self):
        with pytest.raises(InputError):
            cubic_from_skewness(InnerProduct.orthonormal(3), np.zeros((2, 2, 2)))

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            skewness_from_cubic(InnerProduct.orthonormal(2), CubicForm.zero(3))


class TestCubicFromEntries:
    def test_symmetrizes_entries(self):
        cubic = cubic_from_entries(3, [[2, 1, 1, 0.5], [3, 3, 1, -1.0]])
        assert dict(cubic.items()) == {(0, 0, 1): 0.5, (0, 2, 2): -1.0}

    def test_repeated_agreeing_entries(self):
        cubic = cubic_from_entries(3, [[1, 1, 2, 1.0], [2, 1, 1, 1.0]])
        assert dict(cubic.items()) == {(0, 0, 1): 1.0}

    def test_conflict(self):
        with pytest.raises(InputError, match="already set"):
            cubic_from_entries(3, [[1, 1, 2, 1.0], [1, 2, 1, 2.0]])

    def test_out_of_range(self):
        with pytest.raises(InputError, match="out of range 1..2"):
            cubic_from_entries(2, [[1, 1, 3, 1.0]])

    def test_non_integer_index(self):
        with pytest.raises(InputError):
            cubic_from_entries(3, [[1.5, 1, 1, 1.0]])

    def test_wrong_row_length(self):
        with pytest.raises(InputError):
            cubic_from_entries(3, [[1, 1, 1]])

    def test_empty(self):
        assert cubic_from_entries(3, []).norm() == 0.0
