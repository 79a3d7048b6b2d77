"""Tests for curves, transport, Witt bases and holonomy algebras."""

import numpy as np
import pytest

from src.algebra.matrix_functions import matrix_log
from src.builders.examples import build_example2
from src.builders.heisenberg import build_perturbed_heisenberg
from src.classifier.bridge import classify_holonomy_pair
from src.classifier.ideal_cases import codim1_ideal_representatives
from src.contact.connection import horizontal_connection
from src.contact.curvature import schouten_curvature
from src.errors import NonHorizontalCurveError, PreconditionError
from src.holonomy.algebras import ambrose_singer_algebra, connection_for_mode, holonomy_by_sampling
from src.holonomy.curves import ChartCurve, coordinate_rectangle, theta_circulation
from src.holonomy.horizontalize import horizontal_lift, horizontality_defect
from src.holonomy.loops import loop_family, random_path, straight_segment
from src.holonomy.reeb_flow import ReebFlow
from src.holonomy.transport import parallel_transport
from src.holonomy.verify import verify_codim_theorem, verify_reeb_transport, verify_wagner_holonomy
from src.holonomy.witt import orthogonal_part, screen_algebra, stabilized_null_line, to_witt_form, witt_basis
from src.models.enums import HolonomyMode

WITT_GRAM = np.array(
    [[0.0, 0.0, 0.0, 1.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [1.0, 0.0, 0.0, 0.0]]
)


# ============================================================================
# CURVES
# ============================================================================

class TestCurves:
    """Тесты для кривых и горизонтализации."""

    def test_rectangle_is_closed(self):
        rect = coordinate_rectangle([0, 0, 0, 0, 0], 1, 2, "1/10", "1/10")
        assert len(rect) == 4
        assert rect.is_closed()

    def test_discontinuous_curve_rejected(self):
        first = straight_segment([0, 0, 0, 0, 0], [0, 1, 0, 0, 0])
        second = straight_segment([0, 0, 1, 0, 0], [0, 0, 2, 0, 0])
        with pytest.raises(PreconditionError):
            first.then(second)

    def test_theta_circulation_of_rectangle(self, heisenberg):
        """Циркуляция theta = площадь прямоугольника в плоскости (x1, x2)."""
        rect = coordinate_rectangle([0, 0, 0, 0, 0], 1, 2, "1/10", "1/5")
        assert theta_circulation(heisenberg.numeric, rect) == pytest.approx(0.02, abs=1e-12)

    def test_horizontal_lift_shift(self, heisenberg, fast_settings):
        """Подъём прямоугольника горизонтален и сдвинут по времени Риба на -площадь."""
        rect = coordinate_rectangle([0, 0, 0, 0, 0], 1, 2, "1/10", "1/5")
        lifted, shift = horizontal_lift(heisenberg, rect, settings=fast_settings)
        assert horizontality_defect(heisenberg.numeric, lifted, 50) < 1e-12
        assert shift == pytest.approx(-0.02, abs=1e-12)
        assert lifted.end()[0] == pytest.approx(-0.02, abs=1e-12)

    def test_reeb_flow_translation(self, heisenberg):
        flow = ReebFlow(heisenberg.numeric)
        assert flow.is_translation
        points = flow.flow(np.zeros((2, 5)), np.array([0.5, -1.0]))
        np.testing.assert_allclose(points[:, 0], [0.5, -1.0])

    def test_horizontal_lift_quadratic_shift(self, example1, fast_settings):
        """Отрезок до x1 = x2 = 1/5: t(s) = -s^2/50, сдвиг -0.02."""
        end = [0, 0, "1/5", "1/5", 0, 0, 0]
        lifted, shift = horizontal_lift(example1, straight_segment([0] * 7, end), settings=fast_settings)
        assert horizontality_defect(example1.numeric, lifted, 50) < 1e-12
        assert shift == pytest.approx(-0.02, abs=1e-12)
        points, _ = lifted.samples(11)
        s = np.linspace(0.0, 1.0, 11)
        np.testing.assert_allclose(points[:, 0], -s**2 / 50, atol=1e-12)

    def test_reeb_orbit_lifts_to_constant_curve(self, example1, fast_settings):
        """Орбита поля Риба поднимается в постоянную кривую."""
        end = ["1/2", 0, 0, 0, 0, 0, 0]
        lifted, shift = horizontal_lift(example1, straight_segment([0] * 7, end), settings=fast_settings)
        assert shift == pytest.approx(-0.5, abs=1e-12)
        points, _ = lifted.samples(11)
        np.testing.assert_allclose(points, 0.0, atol=1e-12)


class TestTransport:
    """Тесты для параллельного переноса."""

    def test_flat_transport_is_identity(self, heisenberg, fast_settings):
        conn = horizontal_connection(heisenberg)
        curve = straight_segment([0, 0, 0, 0, 0], [0, "1/5", 0, 0, 0])
        result = parallel_transport(conn, curve, settings=fast_settings)
        np.testing.assert_allclose(result.matrix, np.eye(4), atol=1e-12)

    def test_non_horizontal_curve_rejected(self, heisenberg, fast_settings):
        """Горизонтальная связность не переносит вдоль не горизонтальных кривых."""
        conn = horizontal_connection(heisenberg)
        curve = straight_segment([0, 1, 0, 0, 0], [0, 1, "1/5", 0, 0])
        with pytest.raises(NonHorizontalCurveError):
            parallel_transport(conn, curve, settings=fast_settings)

    def test_transport_is_isometry(self, example1, fast_settings):
        """Перенос сохраняет метрику."""
        conn = horizontal_connection(example1)
        x = [0, 0, "1/5", 0, 0, 0, 0]
        curve = ChartCurve.polygon([[0] * 7, x])
        lifted, _ = horizontal_lift(example1, curve, settings=fast_settings)
        result = parallel_transport(conn, lifted, settings=fast_settings)
        numeric = example1.numeric
        G0 = numeric.gram_at(lifted.start())
        G1 = numeric.gram_at(lifted.end())
        assert result.isometry_defect(G0, G1) < 1e-8

    def test_concatenation_and_inversion(self, example1, fast_settings, rng):
        """T(c1 c2) = T(c2) T(c1) и T(c^-1) T(c) = I с точностью 2 ode_tol."""
        conn = horizontal_connection(example1)
        path = random_path(example1.basepoint_floats(), 0.2, rng, pieces=2)
        lifted, _ = horizontal_lift(example1, path, settings=fast_settings)
        first = ChartCurve(lifted.segments[:1])
        second = ChartCurve(lifted.segments[1:])
        whole = parallel_transport(conn, lifted, settings=fast_settings)
        split = parallel_transport(conn, first, settings=fast_settings).then(
            parallel_transport(conn, second, settings=fast_settings)
        )
        back = parallel_transport(conn, lifted.reversed(), settings=fast_settings)
        limit = 2 * fast_settings.ode_tol
        assert np.max(np.abs(whole.matrix - split.matrix)) <= limit
        assert np.max(np.abs(back.matrix @ whole.matrix - np.eye(example1.rank))) <= limit

    def test_small_loop_leading_term(self, example1, fast_settings):
        """Перенос по квадрату со стороной eps: log T = eps^2 R(X1, U) + O(eps^3)."""
        eps = 0.02
        rect = coordinate_rectangle([0] * 7, 2, 6, "1/50", "1/50")
        conn = horizontal_connection(example1)
        result = parallel_transport(conn, rect, settings=fast_settings)
        log_T = matrix_log(result.matrix)
        assert log_T is not None

        R = schouten_curvature(example1)
        expected = eps**2 * R.numeric(example1.basepoint_floats())[R.pairs.index((1, 5))]
        ratio = np.linalg.norm(log_T) / np.linalg.norm(expected)
        cosine = np.sum(log_T * expected) / (np.linalg.norm(log_T) * np.linalg.norm(expected))
        assert ratio == pytest.approx(1.0, rel=0.1)
        assert abs(cosine) >= 0.99

    @pytest.mark.slow
    def test_random_transports_are_isometries(self, example1, fast_settings, rng):
        """100 случайных путей: дефект изометрии в пределах оценки ошибки."""
        conn = horizontal_connection(example1)
        x = example1.basepoint_floats()
        numeric = example1.numeric
        for _ in range(100):
            lifted, _ = horizontal_lift(example1, random_path(x, 0.2, rng), settings=fast_settings)
            result = parallel_transport(conn, lifted, settings=fast_settings)
            defect = result.isometry_defect(numeric.gram_at(lifted.start()), numeric.gram_at(lifted.end()))
            assert defect <= max(10 * result.est_error, fast_settings.ode_tol)


# ============================================================================
# WITT BASES
# ============================================================================

class TestWitt:
    """Тесты для изотропных прямых и базиса Витта."""

    def test_witt_basis_gram(self, rng):
        """P^T G P - матрица Грама в базисе Витта."""
        R = rng.standard_normal((4, 4)) + 3 * np.eye(4)
        G = R.T @ WITT_GRAM @ R
        p = np.linalg.solve(R, [1.0, 0.0, 0.0, 0.0])
        basis = witt_basis(p, G)
        np.testing.assert_allclose(basis.matrix.T @ G @ basis.matrix, WITT_GRAM, atol=1e-8)
        assert basis.sign == 1

    def test_opposite_signature(self):
        basis = witt_basis(np.array([1.0, 0.0, 0.0, 0.0]), -WITT_GRAM)
        assert basis.sign == -1

    def test_not_lorentzian_rejected(self):
        with pytest.raises(PreconditionError):
            witt_basis(np.array([1.0, 0.0, 0.0, 0.0]), np.eye(4))

    def test_null_line_of_type_2_algebra(self, corpus_entries, rng):
        """Должен находить изотропную прямую после случайной замены базиса."""
        entry = next(e for e in corpus_entries if e.name == "g2_so2_k3")
        g = entry.algebra
        k = g.ambient_dim - 2
        W = np.zeros((k + 2, k + 2))
        W[0, -1] = W[-1, 0] = 1.0
        W[1:-1, 1:-1] = np.eye(k)
        R = rng.standard_normal((k + 2, k + 2)) + 3 * np.eye(k + 2)
        G = R.T @ W @ R
        moved = g.conjugate(R)
        p = stabilized_null_line(moved, G, 1e-8)
        expected = np.linalg.solve(R, np.eye(k + 2)[:, 0])
        assert p is not None
        assert abs(abs(p @ expected) / np.linalg.norm(expected) - 1.0) < 1e-8
        witt = to_witt_form(moved, p, G)
        assert orthogonal_part(witt, 1e-8).dim == screen_algebra(moved, p, G, 1e-8).dim == 1


class TestLorentzianBridge:
    """Тесты классификации пары алгебр, заданных в произвольном базисе."""

    def test_u2_pair(self, corpus_entries, rng):
        entry = next(e for e in corpus_entries if e.name == "g2_u2_k4")
        g = entry.algebra
        [(label, I)] = codim1_ideal_representatives(g)
        assert label.case.value == "2.2"

        W = np.zeros((6, 6))
        W[0, -1] = W[-1, 0] = 1.0
        W[1:-1, 1:-1] = np.eye(4)
        R = rng.standard_normal((6, 6)) + 3 * np.eye(6)
        G = R.T @ W @ R
        result = classify_holonomy_pair(I.conjugate(R), g.conjugate(R), G)
        assert not result.failed
        assert result.descriptor.kind.value == "2"
        assert result.ideal.case.value == "2.2"
        assert result.screen_dims == (3, 4)

    def test_non_lorentzian_gram_noted(self, corpus_entries):
        """Без лоренцевой метрики классификация не проводится."""
        g = next(e for e in corpus_entries if e.name == "g2_so2_k3").algebra
        result = classify_holonomy_pair(g, g, np.eye(5))
        assert result.descriptor is None
        assert result.notes == ("scalar product is not Lorentzian",)


# ============================================================================
# HOLONOMY ALGEBRAS
# ============================================================================

@pytest.mark.slow
class TestHolonomyAlgebras:
    """Тесты для алгебр голономии (медленные)."""

    def test_flat_model(self, heisenberg, fast_settings):
        estimate = ambrose_singer_algebra(heisenberg, settings=fast_settings)
        assert estimate.dim == 0
        report = verify_codim_theorem(heisenberg, settings=fast_settings)
        assert report.passed
        assert report.codim == 0

    def test_wagner_mode_only_by_sampling(self, heisenberg, fast_settings):
        with pytest.raises(ValueError):
            ambrose_singer_algebra(heisenberg, mode=HolonomyMode.WAGNER, settings=fast_settings)

    def test_flat_model_loops(self, heisenberg, fast_settings):
        conn = connection_for_mode(heisenberg, HolonomyMode.WAGNER)
        estimate = holonomy_by_sampling(heisenberg, conn, settings=fast_settings)
        assert estimate.dim == 0
        loops = loop_family(heisenberg, heisenberg.basepoint_floats(), 0.1, 3, closing=True, settings=fast_settings)
        assert len(loops) == 3
        assert all(loop.curve.is_closed(1e-9) for loop in loops)

    def test_example1(self, example1, default_settings):
        """Пример 1: горизонтальная и адаптированная голономии совпадают."""
        report = verify_codim_theorem(example1, settings=default_settings)
        assert report.horizontal.dim == 4
        assert report.adapted.dim == 4
        assert report.codim == 0
        assert report.passed

    def test_sasakian_ball(self, sasakian_ball, default_settings):
        """Сасакиев шар: su(2) внутри u(2), C дополняет до u(2)."""
        report = verify_codim_theorem(sasakian_ball, settings=default_settings)
        assert report.horizontal.dim == 3
        assert report.adapted.dim == 4
        assert report.codim == 1
        assert report.is_ideal
        assert report.C_in_complement
        assert report.passed

    @pytest.mark.parametrize("r", [0.0, 0.1, 0.5])
    def test_reeb_transport(self, example1, fast_settings, r):
        check = verify_reeb_transport(example1, r=r, tol=1e-6, settings=fast_settings)
        assert check.passed

    def test_wagner_holonomy_flat(self, heisenberg, fast_settings):
        comparison = verify_wagner_holonomy(heisenberg, settings=fast_settings)
        assert comparison.equal

    def test_reeb_transport_full_orbit(self, example1, fast_settings):
        check = verify_reeb_transport(example1, r=1.0, tol=1e-6, ode_tol=1e-9, settings=fast_settings)
        assert check.passed

    def test_wagner_holonomy_example1(self, example1, default_settings):
        """Голономия связности Вагнера совпадает с горизонтальной на примере 1."""
        comparison = verify_wagner_holonomy(example1, settings=default_settings)
        assert comparison.equal

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_perturbed_heisenberg(self, fast_settings, seed):
        """Должен проходить проверку коразмерности на возмущённых моделях."""
        S = build_perturbed_heisenberg(seed).to_structure()
        report = verify_codim_theorem(S, settings=fast_settings)
        assert report.codim in (0, 1)
        assert report.passed

    @pytest.mark.parametrize("s, dim", [(1, 3), (2, 8)])
    def test_example2(self, default_settings, s, dim):
        """Пример 2: dim u(s) + 2s, экранная часть u(s)."""
        S = build_example2(s, certify=False).to_structure()
        report = verify_codim_theorem(S, settings=default_settings)
        assert report.horizontal.dim == dim
        assert report.adapted.dim == dim
        assert report.passed
        gram = S.numeric.gram_at(S.basepoint_floats())
        for algebra in (report.horizontal_algebra, report.adapted_algebra):
            p = stabilized_null_line(algebra, gram, 1e-8)
            assert p is not None
            assert screen_algebra(algebra, p, gram, 1e-8).dim == s * s
