"""Unit tests for the exact chart calculus."""

import numpy as np
import pytest
import sympy as sp

from src.chart.chart import Chart, to_rational
from src.chart.fields import Coframe, FrameMetric, OneForm, VectorField, exterior_derivative, vf_bracket
from src.chart.matrices import (
    RationalMatrix,
    fmat_add,
    fmat_det,
    fmat_equal,
    fmat_identity,
    fmat_inv,
    fmat_mul,
    fmat_scale,
)
from src.chart.numeric import LambdifiedArray
from src.errors import DimensionMismatchError, ExpressionError, MetricDegeneracyError, PoleError


@pytest.fixture(scope="module")
def chart() -> Chart:
    return Chart(["t", "x1", "x2", "x3", "x4"])


# ============================================================================
# PARSING
# ============================================================================

class TestChartGrammar:
    """Тесты для грамматики выражений."""

    def test_parse_emit_round_trip(self, chart):
        """Должен восстанавливать функцию из канонического текста."""
        f = chart.parse("(x1^2 + 3/2*x2) / (1 - x3*x4)")
        text = chart.emit(f)
        assert chart.parse(text) == f
        assert chart.emit(chart.parse(text)) == text

    def test_equal_functions_compare_equal(self, chart):
        """Равенство канонично: сокращённые дроби совпадают."""
        assert chart.parse("(x1^2 - 1)/(x1 - 1)") == chart.parse("x1 + 1")

    def test_decimal_literal_is_exact(self, chart):
        assert chart.parse("0.5*x1") == chart.parse("x1/2")

    @pytest.mark.parametrize("text", ["y + 1", "sin(x1)", "x1^(1/2)", "x1 +* 2", "", "x1 $ 2"])
    def test_invalid_expressions(self, chart, text):
        """Должен отклонять неизвестные идентификаторы и нецелые степени."""
        with pytest.raises(ExpressionError):
            chart.parse(text)

    def test_invalid_coordinate_names(self):
        with pytest.raises(ExpressionError):
            Chart(["t", "y"])
        with pytest.raises(ExpressionError):
            Chart(["t", "x1", "x1"])

    def test_to_rational(self):
        assert to_rational("3/2") == sp.Rational(3, 2)
        assert to_rational(0.25) == sp.Rational(1, 4)
        assert to_rational(np.float64(0.5)) == sp.Rational(1, 2)
        assert to_rational(np.int64(3)) == 3
        with pytest.raises(ExpressionError):
            to_rational("abc")


class TestEvaluation:
    """Тесты для вычисления в точках."""

    def test_exact_value(self, chart):
        f = chart.parse("(x1 + 1)/(x2 + 2)")
        assert chart.evaluate(f, [0, 0, 1, 0, 0]) == sp.Rational(1, 3)

    def test_pole_detected(self, chart):
        """Должен сообщать о полюсе."""
        with pytest.raises(PoleError):
            chart.evaluate(chart.parse("1/x1"), [0, 0, 0, 0, 0])

    def test_wrong_point_dimension(self, chart):
        with pytest.raises(DimensionMismatchError):
            chart.evaluate(chart.one, [0, 0])

    def test_lambdified_batch(self, chart):
        """Постоянные элементы расширяются на все точки."""
        arr = LambdifiedArray(chart, [[chart.one, chart.parse("x1*x2")]])
        points = np.array([[0, 1, 2, 0, 0], [0, 3, 4, 0, 0]], dtype=float)
        values = arr.batch(points)
        assert values.shape == (2, 1, 2)
        np.testing.assert_allclose(values[:, 0, 0], [1.0, 1.0])
        np.testing.assert_allclose(values[:, 0, 1], [2.0, 12.0])
        np.testing.assert_allclose(arr(points[1]), [[1.0, 12.0]])


# ============================================================================
# FIELDS AND FORMS
# ============================================================================

class TestFields:
    """Тесты для векторных полей и форм."""

    def test_bracket(self, chart):
        """[d_x1, x1 d_x2] = d_x2."""
        X = VectorField.coordinate(chart, "x1")
        Y = VectorField.coordinate(chart, "x2").scale(chart.gen("x1"))
        assert vf_bracket(X, Y) == VectorField.coordinate(chart, "x2")
        assert vf_bracket(Y, X) == -VectorField.coordinate(chart, "x2")

    def test_exterior_derivative_full_convention(self, chart):
        """d theta(X, Y) = X theta(Y) - Y theta(X) - theta([X, Y])."""
        theta = OneForm.parse(chart, ["1", "0", "x1", "0", "x3"])
        d = exterior_derivative(theta)
        X1, X2 = VectorField.coordinate(chart, "x1"), VectorField.coordinate(chart, "x2")
        assert d(X1, X2) == chart.one
        assert d(X2, X1) == -chart.one
        assert not d(X1, VectorField.coordinate(chart, "x3"))

    def test_wrong_component_count(self, chart):
        with pytest.raises(DimensionMismatchError):
            VectorField(chart, (chart.one,))

    def test_coframe_components(self, chart):
        """Разложение по реперу и трансверсальному полю."""
        t = VectorField.coordinate(chart, "t")
        frame = [
            VectorField.coordinate(chart, "x1"),
            VectorField.coordinate(chart, "x2") - t.scale(chart.gen("x1")),
            VectorField.coordinate(chart, "x3"),
            VectorField.coordinate(chart, "x4") - t.scale(chart.gen("x3")),
        ]
        coframe = Coframe(frame, t)
        Z = VectorField.coordinate(chart, "x2")
        comps = coframe.components(Z)
        assert comps[1] == chart.one
        assert comps[-1] == chart.gen("x1")
        assert coframe.combine(comps) == Z

    def test_jacobi_identity(self, chart):
        """[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0."""
        X = VectorField.parse(chart, ["x1", "1", "x2*x3", "0", "1/(1 + x4^2)"])
        Y = VectorField.parse(chart, ["0", "x3^2", "t", "x1*x4", "1"])
        Z = VectorField.parse(chart, ["x2", "0", "1", "t*x1", "x3"])
        total = vf_bracket(X, vf_bracket(Y, Z)) + vf_bracket(Y, vf_bracket(Z, X)) + vf_bracket(Z, vf_bracket(X, Y))
        assert total.is_zero()

    def test_d_of_dtheta_vanishes(self, chart):
        """d(d theta) = 0 на трёх произвольных полях."""
        theta = OneForm.parse(chart, ["1 + x1*x2", "x3", "x1^2", "0", "t*x3/(2 + x4^2)"])
        d = exterior_derivative(theta)
        X = VectorField.parse(chart, ["x1", "1", "0", "x2", "0"])
        Y = VectorField.parse(chart, ["0", "x3", "t", "1", "x1"])
        Z = VectorField.parse(chart, ["1", "0", "x4", "0", "x2*x3"])
        value = (
            X.apply(d(Y, Z)) - Y.apply(d(X, Z)) + Z.apply(d(X, Y))
            - d(vf_bracket(X, Y), Z) + d(vf_bracket(X, Z), Y) - d(vf_bracket(Y, Z), X)
        )
        assert not value

    def test_gram_must_be_symmetric(self, chart):
        frame = tuple(VectorField.coordinate(chart, c) for c in ("x1", "x2"))
        with pytest.raises(MetricDegeneracyError):
            FrameMetric(frame, ((chart.one, chart.one), (chart.zero, chart.one)))


class TestFunctionMatrices:
    def test_inverse(self, chart):
        x1 = chart.gen("x1")
        M = [[chart.one, x1], [chart.zero, chart.one + x1 * x1]]
        product = fmat_mul(chart, M, fmat_inv(chart, M))
        assert fmat_equal(product, fmat_identity(chart, 2))
        assert fmat_det(chart, M) == chart.one + x1 * x1


class TestRationalMatrix:
    """Тесты для матриц с общим знаменателем."""

    @pytest.fixture
    def pair(self, chart):
        A = [[chart.parse("x1/(1 + x2^2)"), chart.one], [chart.parse("t"), chart.parse("1/(1 + x2^2)")]]
        B = [[chart.parse("x3/(1 - x1)"), chart.zero], [chart.parse("x2"), chart.parse("x4/(1 + x2^2)")]]
        return A, B

    def test_round_trip(self, chart, pair):
        A, _ = pair
        assert fmat_equal(RationalMatrix.from_rows(chart, A).to_rows(), A)

    def test_agrees_with_field_arithmetic(self, chart, pair):
        """Сумма, произведение и масштаб совпадают с поэлементной арифметикой."""
        A, B = pair
        RA, RB = RationalMatrix.from_rows(chart, A), RationalMatrix.from_rows(chart, B)
        f = chart.parse("x1/(3 + x4)")
        assert fmat_equal((RA + RB).to_rows(), fmat_add(A, B))
        assert fmat_equal((RA - RB).to_rows(), fmat_add(A, fmat_scale(B, -chart.one)))
        assert fmat_equal((RA @ RB).to_rows(), fmat_mul(chart, A, B))
        assert fmat_equal(RA.scale(f).to_rows(), fmat_scale(A, f))
        assert RA.scale(0).is_zero()

    def test_derivative(self, chart, pair):
        """X(M) совпадает с поэлементной производной вдоль поля."""
        A, _ = pair
        X = VectorField.parse(chart, ["1", "x2/(1 + x1)", "x1", "0", "1"])
        expected = [[X.apply(f) for f in row] for row in A]
        assert fmat_equal(RationalMatrix.from_rows(chart, A).derivative(X).to_rows(), expected)
        constant = VectorField.coordinate(chart, "x3")
        assert fmat_equal(RationalMatrix.from_rows(chart, A).derivative(constant).to_rows(), [[chart.zero] * 2] * 2)
