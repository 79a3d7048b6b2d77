"""Unit tests for scalar products, spans, closures and ideals."""

import numpy as np
import pytest
import sympy as sp

from src.algebra.ideals import codim, codim1_ideals_oracle, derived_algebra, is_ideal
from src.algebra.lie_span import LieAlgebraSpan, bracket, lie_closure, span_basis, sum_spans
from src.algebra.matrix_functions import matrix_exp, matrix_log, nilpotency_index
from src.algebra.scalar_product import (
    Bivector,
    ScalarProductSpace,
    bivector_basis,
    bivector_to_endo,
    endo_to_bivector,
    is_skew,
    pair_form_bivector,
)
from src.classifier.catalog import so, so_basis, su2, u2
from src.errors import ContainmentError, DescriptorError, DimensionMismatchError, MetricDegeneracyError


# ============================================================================
# SCALAR PRODUCTS AND BIVECTORS
# ============================================================================

class TestScalarProduct:
    """Тесты для индефинитных скалярных произведений."""

    def test_witt_signature(self):
        """Должен давать лоренцеву сигнатуру в базисе Витта."""
        V = ScalarProductSpace.witt(2)
        assert V.dim == 4
        assert V.signature() == (3, 1)

    def test_degenerate_gram_rejected(self):
        """Должен отклонять вырожденную матрицу Грама."""
        with pytest.raises(MetricDegeneracyError):
            ScalarProductSpace.from_rows([[1, 0], [0, 0]])

    def test_non_symmetric_gram_rejected(self):
        with pytest.raises(MetricDegeneracyError):
            ScalarProductSpace.from_rows([[1, 1], [0, 1]])


class TestBivectors:
    """Тесты для бивекторов и их эндоморфизмов."""

    def test_wedge_action(self):
        """(e0 ^ e1) e0 = e1 в евклидовой плоскости."""
        V = ScalarProductSpace.from_rows([[1, 0], [0, 1]])
        M = bivector_to_endo(Bivector.wedge(0, 1, 2), V)
        assert list(M[:, 0]) == [0, 1]
        assert list(M[:, 1]) == [-1, 0]

    def test_endo_is_skew_for_lorentzian_gram(self):
        """Должен давать g-кососимметричные эндоморфизмы."""
        V = ScalarProductSpace.witt(2)
        for B in bivector_basis(V.dim):
            assert is_skew(bivector_to_endo(B, V), V.gram)

    def test_endo_to_bivector_inverts(self):
        V = ScalarProductSpace.witt(1)
        B = Bivector.wedge(0, 2, 3) + Bivector.wedge(1, 2, 3).scale(3)
        assert endo_to_bivector(bivector_to_endo(B, V), V) == B

    def test_non_antisymmetric_rejected(self):
        with pytest.raises(ValueError):
            Bivector(sp.ImmutableMatrix([[0, 1], [1, 0]]))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            bivector_to_endo(Bivector.wedge(0, 1, 3), ScalarProductSpace.witt(0))

    def test_pairing_full_double_sum(self):
        """Спаривание суммирует по всем парам (a, b)."""
        B = Bivector.wedge(0, 1, 2)
        assert pair_form_bivector(B.coeffs, B) == 2
        assert pair_form_bivector(np.array(B.coeffs.tolist(), dtype=float), B) == pytest.approx(2.0)


# ============================================================================
# SPANS AND CLOSURES
# ============================================================================

class TestLieSpan:
    """Тесты для линейных оболочек матриц."""

    def test_span_drops_dependent(self):
        """Должен выбрасывать линейно зависимые матрицы."""
        A, B = so_basis(3)[:2]
        span = span_basis([A, 2 * A, B], 1e-9, 3)
        assert span.dim == 2

    def test_span_keeps_input_matrices(self):
        basis = so_basis(3)
        span = span_basis(basis, 1e-9, 3)
        assert span.dim == 3
        assert all(any(np.array_equal(M, N) for N in basis) for M in span.basis)

    def test_empty_span(self):
        span = span_basis([], 1e-9, 4)
        assert span.dim == 0
        assert span.ambient_dim == 4
        assert lie_closure(span).dim == 0

    def test_wrong_shape_rejected(self):
        with pytest.raises(DimensionMismatchError):
            span_basis([np.eye(2), np.eye(3)])

    def test_float_noise_has_rank_zero(self):
        """Шум порядка 1e-17 не даёт направления."""
        assert span_basis([np.full((2, 2), 1e-17)], 1e-10, 2).dim == 0
        noisy = 5e-17 * so_basis(2)[0]
        assert span_basis([noisy, np.zeros((2, 2))], 1e-10, 2).dim == 0

    def test_small_direction_kept(self):
        """Малые, но настоящие направления сохраняются."""
        e12, e13, _ = so_basis(3)
        assert span_basis([1e-3 * e12, 1e-3 * e13], 1e-9, 3).dim == 2

    def test_closure_of_two_rotations_is_so3(self):
        """Замыкание двух вращений даёт so(3)."""
        e12, _, e23 = so_basis(3)
        closed = lie_closure(span_basis([e12, e23], 1e-9, 3))
        assert closed.dim == 3
        assert closed.equals(so(3), 1e-9)
        assert closed.is_closed()

    def test_containment_and_residual(self):
        g = so(3)
        assert g.contains(bracket(*so_basis(3)[:2]))
        assert not g.contains(np.eye(3))
        assert g.residual(np.eye(3)) > 0.5

    def test_sum_spans(self):
        total = sum_spans(su2(), span_basis([u2().basis[3]], 1e-9, 4))
        assert total.equals(u2(), 1e-9)

    def test_conjugate_preserves_dimension(self, rng):
        P = rng.standard_normal((4, 4)) + 4 * np.eye(4)
        conj = u2().conjugate(P)
        assert conj.dim == 4
        assert conj.is_closed(1e-8)


class TestIdeals:
    """Тесты для идеалов и производной алгебры."""

    def test_su2_is_ideal_of_u2(self):
        """su(2) - идеал коразмерности 1 в u(2)."""
        assert is_ideal(su2(), u2())
        assert codim(su2(), u2()) == 1

    def test_rotation_line_is_not_ideal_of_so3(self):
        line = span_basis([so_basis(3)[0]], 1e-9, 3)
        assert not is_ideal(line, so(3))

    def test_not_contained_raises(self):
        with pytest.raises(ContainmentError):
            is_ideal(span_basis([np.eye(4)], 1e-9, 4), u2())

    def test_derived_algebra(self):
        assert derived_algebra(u2()).equals(su2(), 1e-9)
        assert derived_algebra(so(2)).dim == 0

    def test_oracle_for_u2(self):
        """Единственный идеал коразмерности 1 в u(2) - su(2)."""
        family = codim1_ideals_oracle(u2())
        assert family.kind == "family"
        assert family.parameter_dim == 0
        assert len(family.representatives) == 1
        assert family.representatives[0].equals(su2(), 1e-8)

    def test_oracle_for_simple_algebra(self):
        family = codim1_ideals_oracle(so(3))
        assert family.kind == "none"
        assert family.representatives == ()
        with pytest.raises(DescriptorError):
            family.member([1.0])

    def test_oracle_members_are_ideals(self, rng):
        """Любая гиперплоскость, содержащая g', является идеалом."""
        blocks = [np.pad(M, pad) for M in so(2).basis for pad in (((0, 2), (0, 2)), ((2, 0), (2, 0)))]
        abelian = LieAlgebraSpan(4, tuple(blocks))
        family = codim1_ideals_oracle(abelian)
        assert family.parameter_dim == 1
        member = family.random_member(rng)
        assert member.dim == 1
        assert is_ideal(member, abelian)


# ============================================================================
# MATRIX FUNCTIONS
# ============================================================================

class TestMatrixFunctions:
    """Тесты для экспоненты и логарифма."""

    def test_nilpotent_exp_exact(self):
        """Для нильпотентных матриц ряд обрывается точно."""
        N = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert nilpotency_index(N) == 2
        np.testing.assert_array_equal(matrix_exp(N, 2.0), [[1.0, 2.0], [0.0, 1.0]])

    def test_nilpotent_exp_symbolic(self):
        N = sp.Matrix([[0, 1], [0, 0]])
        assert matrix_exp(N, 3) == sp.Matrix([[1, 3], [0, 1]])

    def test_rotation_exp(self):
        J = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert nilpotency_index(J) is None
        np.testing.assert_allclose(matrix_exp(J, np.pi / 2), [[0.0, -1.0], [1.0, 0.0]], atol=1e-12)

    @pytest.mark.parametrize("s, t", [(0.3, 0.7), (-0.4, 1.1), (1.5, 0.25)])
    def test_exp_additivity(self, rng, s, t):
        """exp(sA) exp(tA) = exp((s + t)A) до 1e-10."""
        A = 0.5 * rng.standard_normal((4, 4))
        product = matrix_exp(A, s) @ matrix_exp(A, t)
        assert np.max(np.abs(product - matrix_exp(A, s + t))) <= 1e-10

    def test_log_inverts_exp_near_identity(self):
        J = 0.1 * np.array([[0.0, -1.0], [1.0, 0.0]])
        np.testing.assert_allclose(matrix_log(matrix_exp(J)), J, atol=1e-12)

    def test_log_refused_far_from_identity(self):
        assert matrix_log(3.0 * np.eye(2)) is None

    def test_non_square_rejected(self):
        with pytest.raises(DimensionMismatchError):
            matrix_exp(np.zeros((2, 3)))
