"""Tests for contact structures, connections and curvature."""

import numpy as np
import pytest

from src.chart.chart import Chart
from src.chart.fields import FrameMetric, OneForm, VectorField
from src.contact.connection import (
    adapted_connection,
    extended_connection,
    horizontal_connection,
    is_K_contact,
    reeb_coefficients_match,
    tau_endomorphism,
)
from src.contact.curvature import (
    annihilated_bivectors,
    dtheta_inverse,
    pair_dtheta,
    reeb_curvature,
    schouten_curvature,
    wagner_endomorphism,
)
from src.contact.structure import ContactStructure, reeb_field
from src.chart.matrices import fmat_equal, fmat_is_zero
from src.errors import NotContactError, PreconditionError


def heisenberg_frame(chart: Chart):
    t = VectorField.coordinate(chart, "t")
    return (
        VectorField.coordinate(chart, "x1"),
        VectorField.coordinate(chart, "x2") - t.scale(chart.gen("x1")),
        VectorField.coordinate(chart, "x3"),
        VectorField.coordinate(chart, "x4") - t.scale(chart.gen("x3")),
    )


def diagonal_gram(chart: Chart, entries):
    return tuple(
        tuple(chart.parse(entries[a]) if a == b else chart.zero for b in range(len(entries)))
        for a in range(len(entries))
    )


@pytest.fixture(scope="module")
def chart() -> Chart:
    return Chart(["t", "x1", "x2", "x3", "x4"])


@pytest.fixture(scope="module")
def time_dependent(chart) -> ContactStructure:
    """Heisenberg-type structure whose metric grows along the Reeb flow."""
    theta = OneForm.parse(chart, ["1", "0", "x1", "0", "x3"])
    metric = FrameMetric(heisenberg_frame(chart), diagonal_gram(chart, ["1 + t", "1", "1", "1"]))
    return ContactStructure(chart, theta, metric, [0] * 5, name="time_dependent")


# ============================================================================
# STRUCTURE
# ============================================================================

class TestContactStructure:
    """Тесты для проверки входных данных структуры."""

    def test_degenerate_dtheta_rejected(self, chart):
        """Должен отклонять форму, у которой d theta вырождена на D."""
        theta = OneForm.parse(chart, ["1", "0", "x1", "0", "0"])
        t = VectorField.coordinate(chart, "t")
        frame = (
            VectorField.coordinate(chart, "x1"),
            VectorField.coordinate(chart, "x2") - t.scale(chart.gen("x1")),
            VectorField.coordinate(chart, "x3"),
            VectorField.coordinate(chart, "x4"),
        )
        with pytest.raises(NotContactError):
            ContactStructure(chart, theta, FrameMetric(frame, diagonal_gram(chart, ["1"] * 4)), [0] * 5)

    def test_non_horizontal_frame_rejected(self, chart):
        theta = OneForm.parse(chart, ["1", "0", "x1", "0", "x3"])
        frame = tuple(VectorField.coordinate(chart, c) for c in ("x1", "x2", "x3", "x4"))
        with pytest.raises(PreconditionError):
            ContactStructure(chart, theta, FrameMetric(frame, diagonal_gram(chart, ["1"] * 4)), [1, 1, 1, 1, 1])

    def test_low_dimension_rejected(self):
        chart = Chart(["t", "x1", "x2"])
        theta = OneForm.parse(chart, ["1", "0", "x1"])
        t = VectorField.coordinate(chart, "t")
        frame = (VectorField.coordinate(chart, "x1"), VectorField.coordinate(chart, "x2") - t.scale(chart.gen("x1")))
        with pytest.raises(PreconditionError):
            ContactStructure(chart, theta, FrameMetric(frame, diagonal_gram(chart, ["1", "1"])), [0, 0, 0])

    def test_signature(self, heisenberg):
        assert heisenberg.signature() == (4, 0)
        assert not heisenberg.is_lorentzian()

    def test_example1_is_lorentzian(self, example1):
        assert example1.n == 7
        assert example1.m == 3
        assert example1.is_lorentzian()


class TestReebField:
    """Тесты для поля Риба."""

    def test_heisenberg_reeb(self, heisenberg):
        """Поле Риба модели Гейзенберга - d_t."""
        xi = reeb_field(heisenberg)
        assert xi.emit() == ["1", "0", "0", "0", "0"]

    def test_reeb_defining_equations(self, example1):
        xi = reeb_field(example1)
        chart = example1.chart
        assert example1.theta(xi) == chart.one
        for E in example1.frame:
            assert not example1.dtheta(xi, E)


# ============================================================================
# CONNECTIONS
# ============================================================================

class TestConnections:
    """Тесты для горизонтальной и расширенных связностей."""

    def test_flat_model_connection_vanishes(self, heisenberg):
        conn = horizontal_connection(heisenberg)
        assert all(fmat_is_zero(conn.connection_matrix(a)) for a in range(heisenberg.rank))
        assert not conn.is_extended

    def test_k_contact_examples(self, heisenberg, example1, sasakian_ball):
        """Должен распознавать K-контактные структуры."""
        assert is_K_contact(heisenberg)
        assert is_K_contact(example1)
        assert is_K_contact(sasakian_ball)

    def test_time_dependent_metric_is_not_k_contact(self, time_dependent):
        tau = tau_endomorphism(time_dependent)
        assert not is_K_contact(time_dependent)
        assert tau[0][0] == time_dependent.chart.parse("1/(2 + 2*t)")

    def test_adapted_connection_differs_by_tau(self, time_dependent):
        """nabla^tau_xi - nabla^W_xi = tau - N^W."""
        base = horizontal_connection(time_dependent)
        adapted = adapted_connection(time_dependent, base)
        N = wagner_endomorphism(time_dependent)
        wagner = extended_connection(time_dependent, N, label="wagner", base=base)
        tau = tau_endomorphism(time_dependent)
        difference = [[tau[i][j] - N[i][j] for j in range(4)] for i in range(4)]
        assert adapted.is_extended
        assert reeb_coefficients_match(adapted, wagner, difference)

    def test_connection_is_metric(self, example1):
        """g(nabla_a E_b, E_c) + g(E_b, nabla_a E_c) = E_a g_bc в базисной точке."""
        conn = horizontal_connection(example1)
        x = example1.basepoint_floats()
        G = example1.numeric.gram_at(x)
        for a in range(example1.rank):
            Gamma = np.array(
                [[example1.chart.evaluate_float(f, x) for f in row] for row in conn.connection_matrix(a)]
            )
            dG = np.array(
                [[example1.chart.evaluate_float(example1.frame[a].apply(g), x) for g in row] for row in example1.metric.gram]
            )
            np.testing.assert_allclose(Gamma.T @ G + G @ Gamma, dG, atol=1e-12)


# ============================================================================
# CURVATURE
# ============================================================================

class TestCurvature:
    """Тесты для кривизны Схоутена и эндоморфизма Вагнера."""

    def test_flat_model(self, heisenberg):
        assert schouten_curvature(heisenberg).is_zero()
        assert fmat_is_zero(wagner_endomorphism(heisenberg))

    def test_example1_curved(self, example1):
        R = schouten_curvature(example1)
        assert not R.is_zero()
        table = R.table()
        assert table and all(len(row["matrix"]) == example1.rank for row in table)

    def test_example1_curvature_table(self, example1):
        """R(X_i, U) = X_i ^ V, остальные пары нулевые."""
        R = schouten_curvature(example1)
        chart, rank = example1.chart, example1.rank
        g = example1.metric.gram
        last = rank - 1
        assert R.nonzero_pairs() == [(i, last) for i in range(1, last)]
        for i in range(1, last):
            # (X ^ Y) Z = g(X, Z) Y - g(Y, Z) X with X = E_i, Y = V = E_0
            expected = [
                [
                    (g[i][c] if e == 0 else chart.zero) - (g[0][c] if e == i else chart.zero)
                    for c in range(rank)
                ]
                for e in range(rank)
            ]
            assert fmat_equal(R(i, last), expected)

    @pytest.mark.parametrize("fixture_name", ["heisenberg", "example1", "sasakian_ball"])
    def test_dtheta_pairing(self, request, fixture_name):
        """d theta((d theta)^{-1}) = -4m."""
        S = request.getfixturevalue(fixture_name)
        assert pair_dtheta(S, dtheta_inverse(S)) == S.chart.const(-4 * S.m)

    def test_annihilated_bivectors(self, heisenberg):
        omega = heisenberg.numeric.omega_at(heisenberg.basepoint_floats())
        basis = annihilated_bivectors(omega)
        rank = heisenberg.rank
        assert len(basis) == rank * (rank - 1) // 2 - 1
        for B in basis:
            assert abs(float(np.sum(omega * B))) < 1e-12

    @pytest.mark.parametrize("fixture_name", ["heisenberg", "example1", "sasakian_ball"])
    def test_adapted_reeb_curvature_vanishes(self, request, fixture_name):
        """R^tau(xi, E_a) = 0 для K-контактных структур."""
        S = request.getfixturevalue(fixture_name)
        conn = adapted_connection(S, horizontal_connection(S))
        assert all(fmat_is_zero(R) for R in reeb_curvature(S, conn))

    def test_reeb_curvature_needs_extended_connection(self, heisenberg):
        with pytest.raises(ValueError):
            reeb_curvature(heisenberg, horizontal_connection(heisenberg))

    def test_wagner_connection_differs_by_C(self, example1):
        """nabla^W_xi = nabla^tau_xi + C в K-контактном случае."""
        base = horizontal_connection(example1)
        C = wagner_endomorphism(example1)
        adapted = adapted_connection(example1, base)
        wagner = extended_connection(example1, C, label="wagner", base=base)
        assert reeb_coefficients_match(wagner, adapted, C)

    def test_example1_wagner_endomorphism(self, example1):
        """C = X_{2s} ^ V / (s + 1) при s = 2."""
        chart, rank = example1.chart, example1.rank
        g = example1.metric.gram
        i = rank - 2
        third = chart.const("1/3")
        expected = [
            [
                ((g[i][c] if e == 0 else chart.zero) - (g[0][c] if e == i else chart.zero)) * third
                for c in range(rank)
            ]
            for e in range(rank)
        ]
        assert fmat_equal(wagner_endomorphism(example1), expected)
