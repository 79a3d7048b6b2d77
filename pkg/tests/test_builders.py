"""Tests for manifests and the shipped example builders."""

import json

import pytest
import sympy as sp

from src.builders import examples
from src.builders.examples import (
    EXAMPLE2_NOTE,
    ball_metric,
    build_example1,
    build_example2,
    build_sasakian_ball,
    certify_example2,
    example2_target,
    kaehler_pairing,
)
from src.builders.heisenberg import build_heisenberg, build_perturbed_heisenberg
from src.contact.connection import is_K_contact
from src.errors import ManifestError, PreconditionError, VerificationFailure
from src.models.algebra_file import AlgebraFile
from src.models.manifest import Manifest


# ============================================================================
# MANIFEST
# ============================================================================

class TestManifest:
    """Тесты для документа манифеста."""

    def test_canonical_text_is_stable(self, heisenberg_manifest):
        """Должен давать тот же текст после parse и после перестроения структуры."""
        text = heisenberg_manifest.to_json()
        assert Manifest.parse(text).to_json() == text
        rebuilt = Manifest.from_structure(heisenberg_manifest.to_structure(), heisenberg_manifest.flags)
        assert rebuilt.to_json() == text
        assert text.endswith("\n")

    def test_hash_is_deterministic(self):
        first = build_heisenberg(2).manifest_hash()
        assert first == build_heisenberg(2).manifest_hash()
        assert len(first) == 64
        assert first != build_heisenberg(2, negative=1).manifest_hash()

    @pytest.mark.parametrize("text", ["not json", "{}", '{"n": 5}'])
    def test_invalid_documents(self, text):
        with pytest.raises(ManifestError):
            Manifest.parse(text)

    def test_even_dimension_rejected(self, heisenberg_manifest):
        data = json.loads(heisenberg_manifest.to_json())
        data["n"] = 6
        with pytest.raises(ManifestError):
            Manifest.parse(json.dumps(data))

    def test_wrong_gram_shape_rejected(self, heisenberg_manifest):
        data = json.loads(heisenberg_manifest.to_json())
        data["gram"] = data["gram"][:-1]
        with pytest.raises(ManifestError):
            Manifest.parse(json.dumps(data))

    def test_numeric_basepoint_accepted(self, heisenberg_manifest):
        data = json.loads(heisenberg_manifest.to_json())
        data["basepoint"] = [0, 0.5, 0, 0, 0]
        manifest = Manifest.parse(json.dumps(data))
        assert manifest.basepoint[1] == "0.5"
        assert manifest.to_structure().basepoint[1] == sp.Rational(1, 2)


class TestAlgebraFileDocument:
    def test_size_mismatch_rejected(self):
        text = json.dumps({"k": 2, "triples": [{"a": 0.0, "A": [0.0, 0.0, 0.0, 0.0], "X": [1.0, 0.0, 0.0]}]})
        with pytest.raises(ManifestError):
            AlgebraFile.parse(text)

    def test_empty_file(self):
        loaded = AlgebraFile.parse('{"k": 3}')
        assert loaded.algebra().dim == 0
        assert loaded.algebra().ambient_dim == 5


# ============================================================================
# BUILDERS
# ============================================================================

class TestHeisenberg:
    """Тесты для структур типа Гейзенберга."""

    def test_dimensions(self, heisenberg_manifest):
        assert heisenberg_manifest.n == 5
        assert heisenberg_manifest.coords == ["t", "x1", "x2", "x3", "x4"]

    def test_negative_directions(self):
        S = build_heisenberg(2, negative=1).to_structure()
        assert S.signature() == (3, 1)
        assert S.is_lorentzian()

    @pytest.mark.parametrize("kwargs", [{"m": 1}, {"m": 2, "negative": 5}, {"m": 2, "negative": -1}])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(PreconditionError):
            build_heisenberg(**kwargs)

    def test_perturbation_is_k_contact(self):
        """Возмущение не зависит от t, поэтому поле Риба остаётся киллинговым."""
        S = build_perturbed_heisenberg(3).to_structure()
        assert is_K_contact(S)

    def test_perturbation_is_reproducible(self):
        assert build_perturbed_heisenberg(5).to_json() == build_perturbed_heisenberg(5).to_json()


class TestExamples:
    """Тесты для примеров 1, 2 и сасакиева шара."""

    def test_example1_layout(self, example1_manifest):
        assert example1_manifest.n == 7
        assert example1_manifest.coords == ["t", "v", "x1", "x2", "x3", "x4", "u"]
        assert example1_manifest.flags.expect_K_contact

    def test_example1_needs_s_at_least_2(self):
        with pytest.raises(PreconditionError):
            build_example1(1)

    def test_example2_shipped_range(self):
        with pytest.raises(PreconditionError):
            build_example2(3)

    def test_example2_small(self):
        manifest = build_example2(1, certify=False)
        assert manifest.n == 5
        assert manifest.flags.note == EXAMPLE2_NOTE
        assert manifest.to_structure().is_lorentzian()

    def test_example2_fails_loudly_without_certificate(self, monkeypatch):
        """Сборка по умолчанию падает, если H не даёт нужной размерности."""

        def reject(manifest, s, settings=None):
            raise VerificationFailure("shipped H is not generic enough", {"s": s})

        monkeypatch.setattr(examples, "certify_example2", reject)
        with pytest.raises(VerificationFailure):
            build_example2(1)
        assert build_example2(1, certify=False).n == 5

    def test_example2_targets(self):
        assert example2_target(1) == 3
        assert example2_target(2) == 8

    def test_sasakian_ball_needs_s_at_least_2(self):
        with pytest.raises(PreconditionError):
            build_sasakian_ball(1)

    def test_sasakian_ball_is_riemannian(self, sasakian_ball):
        assert sasakian_ball.signature() == (4, 0)

    def test_kaehler_pairing(self):
        """d theta_0(J) = 2s."""
        assert sp.simplify(kaehler_pairing(ball_metric(1)) - 2) == 0

    def test_ball_metric_at_origin(self):
        assert ball_metric(2).subs({s: 0 for s in ball_metric(2).free_symbols}) == 2 * sp.eye(4)

    @pytest.mark.slow
    def test_example2_certified(self, default_settings):
        """Адаптированная голономия примера 2 (s=1) имеет размерность u(1) + 2."""
        assert certify_example2(build_example2(1, certify=False), 1, default_settings) == 3

    @pytest.mark.slow
    def test_example2_built_with_certificate(self, default_settings):
        """По умолчанию сборка сама проверяет размерность."""
        assert build_example2(1, settings=default_settings).n == 5
