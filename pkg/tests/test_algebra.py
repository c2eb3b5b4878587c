"""
Tests for liestat.algebra -- structure constants, presets and unimodularity.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import PRESET_CASES, random_frame_change
from liestat.algebra import (
    ALIASES,
    LieAlgebra,
    MilnorFrameSpec,
    NonUnimodularSpec,
    ad_matrix,
    bracket,
    change_frame,
    class_label,
    echelon_rows,
    is_subalgebra_ideal,
    jacobi_defect,
    milnor_invariant,
    milnor_label,
    nonuni_milnor_invariant,
    preset,
    unimodular_kernel,
)
from liestat.errors import InputError, ValidationError

E1, E2, E3 = np.eye(3)


# ---------------------------------------------------------------------------
# LieAlgebra construction
# ---------------------------------------------------------------------------

class TestLieAlgebra:
    def test_rejects_bad_shape(self):
        with pytest.raises(InputError):
            LieAlgebra(np.zeros((3, 3, 2)))

    def test_rejects_non_antisymmetric(self):
        c = np.zeros((2, 2, 2))
        c[0, 0, 1] = 1.0
        with pytest.raises(ValidationError) as info:
            LieAlgebra(c)
        assert info.value.invariant == "antisymmetry"

    def test_rejects_jacobi_failure(self):
        c = preset("milnor", [1, 1, 1]).c.copy()
        c[0, 0, 1] += 0.1
        c[0, 1, 0] -= 0.1
        with pytest.raises(ValidationError) as info:
            LieAlgebra(c)
        assert info.value.invariant == "jacobi"

    def test_validity_tolerance_is_configurable(self):
        c = preset("milnor", [1, 1, 1]).c.copy()
        c[0, 0, 1] += 1e-7
        c[0, 1, 0] -= 1e-7
        with pytest.raises(ValidationError):
            LieAlgebra(c)
        assert LieAlgebra(c, tol=1e-5).tol == 1e-5

    def test_preset_carries_tolerance(self):
        alg = preset("milnor", [1, 3, 1], tol=1e-6)
        assert alg.tol == 1e-6
        assert change_frame(alg, np.eye(3)).tol == 1e-6
        assert preset("su2").tol == 1e-9

    def test_constants_are_read_only(self):
        alg = preset("su2")
        with pytest.raises(ValueError):
            alg.c[0, 1, 2] = 5.0

    def test_milnor_spec_lambdas(self):
        assert MilnorFrameSpec(1, 3, 1).lambdas == (1.5, -0.5, 1.5)

    def test_nonuni_spec_rejects_negative(self):
        with pytest.raises(InputError):
            NonUnimodularSpec(-0.1, 0.0)
        with pytest.raises(InputError):
            NonUnimodularSpec(0.0, -1.0)

    def test_nonuni_matrix_normalization(self):
        a = NonUnimodularSpec(0.4, 1.3).matrix
        assert np.trace(a) == pytest.approx(2.0)
        # the two columns of A are orthogonal
        assert a[:, 0] @ a[:, 1] == pytest.approx(0.0, abs=1e-14)


# ---------------------------------------------------------------------------
# bracket / jacobi_defect / ad_matrix
# ---------------------------------------------------------------------------

class TestBracket:
    def test_abelian(self):
        assert_allclose(bracket(preset("r3"), E1, E2), 0.0)

    def test_milnor_frame(self):
        assert_allclose(bracket(preset("milnor", [1, 3, 1]), E2, E3), E1)

    def test_nonuni_e3_e1(self):
        assert_allclose(bracket(preset("nonuni", [0, 1]), E3, E1), E2 - E3)

    def test_antisymmetric_and_bilinear(self, rng):
        alg = preset("nonuni", [0.3, 0.8])
        x, y, z = rng.standard_normal((3, 3))
        assert_allclose(bracket(alg, x, y), -bracket(alg, y, x), atol=1e-14)
        assert_allclose(bracket(alg, 2 * x + z, y), 2 * bracket(alg, x, y) + bracket(alg, z, y), atol=1e-13)

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            bracket(preset("su2"), [1, 0], [0, 1, 0])

    def test_ad_matrix_columns(self):
        alg = preset("milnor", [1, 3, 1])
        ad = ad_matrix(alg, E3)
        for j, e in enumerate(np.eye(3)):
            assert_allclose(ad[:, j], bracket(alg, E3, e))


class TestJacobiDefect:
    @pytest.mark.parametrize("name,params", PRESET_CASES)
    def test_presets_are_lie_algebras(self, name, params):
        assert jacobi_defect(preset(name, params)) <= 1e-12

    def test_hand_built_su2(self):
        c = np.zeros((3, 3, 3))
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            c[k, i, j], c[k, j, i] = 1.0, -1.0
        assert jacobi_defect(c) <= 1e-12

    def test_corrupted_su2(self):
        c = preset("milnor", [1, 1, 1]).c.copy()
        c[0, 0, 1] += 0.1
        c[0, 1, 0] -= 0.1
        assert jacobi_defect(c) > 0.05


# ---------------------------------------------------------------------------
# unimodular_kernel / ideals
# ---------------------------------------------------------------------------

class TestUnimodularKernel:
    def test_milnor_is_unimodular(self):
        unimodular, rows = unimodular_kernel(preset("milnor", [1, 3, 1]))
        assert unimodular
        assert len(rows) == 3

    def test_r3_is_unimodular(self):
        assert unimodular_kernel(preset("r3"))[0]

    def test_nonuni_kernel(self):
        unimodular, rows = unimodular_kernel(preset("nonuni", [0.5, 0.0]))
        assert not unimodular
        assert_allclose(np.array(rows), [[0, 1, 0], [0, 0, 1]], atol=1e-12)

    @pytest.mark.parametrize("params", [[0.5, 0.3], [1.0, 2.0], [0.0, 0.0]])
    def test_nonuni_kernel_is_abelian_ideal(self, params):
        alg = preset("nonuni", params)
        _, rows = unimodular_kernel(alg)
        ideal, defect = is_subalgebra_ideal(alg, np.array(rows))
        assert ideal and defect <= 1e-9
        assert_allclose(bracket(alg, rows[0], rows[1]), 0.0, atol=1e-12)

    def test_non_ideal_span(self):
        ideal, defect = is_subalgebra_ideal(preset("su2"), np.array([E1]))
        assert not ideal
        assert defect > 1.0


class TestEchelonRows:
    def test_full_rank(self):
        assert_allclose(echelon_rows(np.array([[2.0, 4.0], [1.0, 3.0]])), np.eye(2))

    def test_leading_entry_is_one(self):
        assert_allclose(echelon_rows(np.array([[0.0, -2.0, 4.0]])), [[0.0, 1.0, -2.0]])

    def test_rank_deficient(self):
        out = echelon_rows(np.array([[1.0, 2.0], [2.0, 4.0]]))
        assert out.shape == (1, 2)
        assert_allclose(out, [[1.0, 2.0]])

    def test_same_span_same_output(self, rng):
        rows = rng.standard_normal((2, 4))
        mix = np.array([[1.0, 2.0], [-3.0, 0.5]]) @ rows
        assert_allclose(echelon_rows(rows), echelon_rows(mix), atol=1e-12)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

class TestPresets:
    def test_g2d(self):
        alg = preset("g2d", [math.sqrt(2)])
        assert alg.dim == 2
        assert_allclose(bracket(alg, [1, 0], [0, 1]), [-1 / math.sqrt(2), 0.0])

    def test_sasaki_g(self):
        alg = preset("sasaki_g", [1])
        assert_allclose(bracket(alg, E2, E3), 2 * E1)
        assert_allclose(bracket(alg, E1, E2), 2 * E3)

    def test_product_trace_two_at_half(self):
        alg = preset("product_g2d_r", [0.5])
        assert_allclose(bracket(alg, E3, E1), -2 * E3)
        assert np.trace(ad_matrix(alg, E1)) == pytest.approx(2.0)

    @pytest.mark.parametrize("alias", sorted(ALIASES))
    def test_aliases_resolve(self, alias):
        family, params = ALIASES[alias]
        assert np.array_equal(preset(alias).c, preset(family, params).c)

    @pytest.mark.parametrize(
        "name,params",
        [
            ("unknown", []),
            ("milnor", [1, 2]),
            ("nonuni", [-1, 0]),
            ("g2d", [0]),
            ("product_g2d_r", [-1]),
            ("su2", [1]),
            ("milnor", [1, float("nan"), 0]),
        ],
    )
    def test_invalid(self, name, params):
        with pytest.raises(InputError):
            preset(name, params)

    def test_case_insensitive(self):
        assert preset("SU2").name == "milnor"


# ---------------------------------------------------------------------------
# labels and invariants
# ---------------------------------------------------------------------------

class TestLabels:
    @pytest.mark.parametrize(
        "c,label",
        [
            ((1, 3, 1), "su2"),
            ((2, 2, 2), "su2"),
            ((-1, -1, -1), "su2"),
            ((1, -1, -1), "sl2r"),
            ((1, 1, 0), "e2"),
            ((1, -1, 0), "e11"),
            ((0, 1, -1), "e11"),
            ((1, 0, 0), "nil3"),
            ((0, 0, 0), "r3"),
        ],
    )
    def test_milnor_label(self, c, label):
        assert milnor_label(*c) == label

    @pytest.mark.parametrize(
        "name,params,label",
        [
            ("nonuni", [0.5, 0.3], "nonuni"),
            ("g2d", [1.0], "aff"),
            ("sasaki_g", [1.0], "su2"),
            ("sasaki_g", [-3.0], "nil3"),
            ("sasaki_g", [-5.0], "sl2r"),
            ("product_g2d_r", [1.0], "nonuni"),
        ],
    )
    def test_class_label(self, name, params, label):
        assert class_label(preset(name, params)) == label

    def test_raw_algebra_label(self):
        assert class_label(LieAlgebra(preset("su2").c)) == "unimodular"
        assert class_label(LieAlgebra(preset("nonuni", [0, 0]).c)) == "nonuni"

    @pytest.mark.parametrize("xi,eta", [(0.0, 0.0), (0.5, 0.3), (1.0, 0.7), (1.5, 2.0)])
    def test_milnor_invariant(self, xi, eta):
        alg = preset("nonuni", [xi, eta])
        assert milnor_invariant(alg) == pytest.approx(nonuni_milnor_invariant(xi, eta), abs=1e-12)

    def test_milnor_invariant_needs_nonunimodular(self):
        with pytest.raises(ValidationError):
            milnor_invariant(preset("su2"))


class TestChangeFrame:
    def test_identity(self):
        alg = preset("nonuni", [0.5, 0.3])
        assert_allclose(change_frame(alg, np.eye(3)).c, alg.c, atol=1e-15)

    def test_brackets_transform(self, rng):
        alg = preset("milnor", [1, 3, 1])
        p = random_frame_change(rng, 3)
        new = change_frame(alg, p)
        # [f_a, f_b] expressed back in e-coordinates
        lhs = p @ bracket(new, E1, E2)
        assert_allclose(lhs, bracket(alg, p[:, 0], p[:, 1]), atol=1e-12)

    def test_unimodularity_is_frame_independent(self, rng):
        alg = preset("nonuni", [0.2, 0.4])
        new = change_frame(alg, random_frame_change(rng, 3))
        assert not unimodular_kernel(new)[0]
        assert milnor_invariant(new) == pytest.approx(milnor_invariant(alg), abs=1e-10)
