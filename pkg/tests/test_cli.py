"""End-to-end tests of the command line through typer's runner."""

import json

import pytest
from typer.testing import CliRunner

from src.builders.heisenberg import build_heisenberg
from src.main import app
from src.models.algebra_file import AlgebraFile


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def manifest_path(tmp_path, heisenberg_manifest):
    path = tmp_path / "heisenberg.json"
    path.write_text(heisenberg_manifest.to_json(), encoding="utf-8")
    return path


def invoke(runner, tmp_path, *args, input=None):
    """Запустить команду с отчётом в файл; вернуть (код выхода, отчёт)."""
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["--log-level", "ERROR", "--out", str(out), *args], input=input)
    report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    return result.exit_code, report


# ============================================================================
# MANIFEST BUILDERS
# ============================================================================

class TestBuilderCommands:
    """Тесты для команд, выдающих манифесты."""

    def test_heisenberg_manifest(self, runner, tmp_path):
        out = tmp_path / "m.json"
        result = runner.invoke(app, ["--log-level", "ERROR", "--out", str(out), "heisenberg", "--m", "2"])
        assert result.exit_code == 0
        assert out.read_text(encoding="utf-8") == build_heisenberg(2).to_json()

    def test_invalid_parameter_exit_code(self, runner, tmp_path):
        result = runner.invoke(app, ["--log-level", "ERROR", "--out", str(tmp_path / "m.json"), "example1", "--s", "1"])
        assert result.exit_code == 2
        assert not (tmp_path / "m.json").exists()


# ============================================================================
# STRUCTURE COMMANDS
# ============================================================================

class TestStructureCommands:
    """Тесты для команд reeb, curvature и обработки ошибок ввода."""

    def test_reeb(self, runner, tmp_path, manifest_path, heisenberg_manifest):
        code, report = invoke(runner, tmp_path, "reeb", str(manifest_path))
        assert code == 0
        assert report["status"] == "ok"
        assert report["manifest_hash"] == heisenberg_manifest.manifest_hash()
        [section] = report["sections"]
        assert section["data"]["xi"] == ["1", "0", "0", "0", "0"]
        assert section["data"]["K_contact"] is True

    def test_reeb_from_stdin(self, runner, tmp_path, heisenberg_manifest):
        """Манифест можно передать через stdin."""
        code, report = invoke(runner, tmp_path, "reeb", "-", input=heisenberg_manifest.to_json())
        assert code == 0
        assert report["sections"][0]["name"] == "reeb"

    def test_curvature_pairing(self, runner, tmp_path, manifest_path):
        code, report = invoke(runner, tmp_path, "curvature", str(manifest_path))
        assert code == 0
        section = report["sections"][0]
        assert section["passed"] is True
        assert section["data"]["dtheta_pairing"] == "-8"

    def test_invalid_manifest(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"n": 4}', encoding="utf-8")
        code, report = invoke(runner, tmp_path, "reeb", str(bad))
        assert code == 2
        assert report["status"] == "input_error"
        assert report["error"]["code"] == "manifest"

    def test_missing_file(self, runner, tmp_path):
        code, report = invoke(runner, tmp_path, "wagner", str(tmp_path / "missing.json"))
        assert code == 2
        assert report["error"]["code"] == "manifest"

    def test_seed_recorded(self, runner, tmp_path, manifest_path):
        code, report = invoke(runner, tmp_path, "--seed", "123", "reeb", str(manifest_path))
        assert code == 0
        assert report["seed"] == 123


# ============================================================================
# CLASSIFIER COMMANDS
# ============================================================================

class TestClassifierCommands:
    """Тесты для команд classify и ideals."""

    @pytest.fixture
    def algebra_path(self, tmp_path, corpus_entries):
        entry = next(e for e in corpus_entries if e.name == "g2_so2_k3")
        path = tmp_path / "g2.json"
        path.write_text(AlgebraFile.from_triples(entry.triples, 3, name=entry.name).to_json(), encoding="utf-8")
        return path

    def test_classify(self, runner, tmp_path, algebra_path):
        code, report = invoke(runner, tmp_path, "classify", str(algebra_path))
        assert code == 0
        data = report["sections"][0]["data"]
        assert data["type"] == "2"
        assert data["dim"] == 4
        assert "decomposition" in data

    def test_ideals(self, runner, tmp_path, algebra_path):
        code, report = invoke(runner, tmp_path, "ideals", str(algebra_path))
        assert code == 0
        data = report["sections"][0]["data"]
        assert [r["label"]["case"] for r in data["representatives"]] == ["2.1", "2.2", "2.3"]
        assert all(label["case"].startswith("2.") for label in data["family_labels"])

    def test_bad_algebra_file(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"k": 2, "triples": [{"A": [0, 0, 0], "X": [1, 0]}]}', encoding="utf-8")
        code, report = invoke(runner, tmp_path, "classify", str(bad))
        assert code == 2
        assert report["error"]["code"] == "manifest"


# ============================================================================
# HOLONOMY COMMANDS
# ============================================================================

@pytest.mark.slow
class TestHolonomyCommands:
    """Тесты для команд holonomy и verify (медленные)."""

    def test_holonomy_flat_model(self, runner, tmp_path, manifest_path):
        code, report = invoke(runner, tmp_path, "holonomy", str(manifest_path))
        assert code == 0
        assert report["sections"][0]["data"]["dim"] == 0

    def test_verify_example1(self, runner, tmp_path, example1_manifest):
        """Пример 1: все секции verify, коразмерность 0."""
        path = tmp_path / "example1.json"
        path.write_text(example1_manifest.to_json(), encoding="utf-8")
        code, report = invoke(runner, tmp_path, "--seed", "7", "verify", str(path))
        assert code == 0
        sections = {s["name"]: s for s in report["sections"]}
        assert list(sections) == ["codim", "reeb_transport", "wagner_holonomy", "classification"]
        codim = sections["codim"]
        assert codim["passed"] is True
        assert codim["data"]["horizontal"]["dim"] == 4
        assert codim["data"]["adapted"]["dim"] == 4
        assert codim["data"]["codim"] == 0
