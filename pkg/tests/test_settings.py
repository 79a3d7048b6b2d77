"""Tests for settings module."""

from src.config.settings import Settings, get_settings


def test_settings_loading():
    """Test that settings can be loaded."""
    settings = get_settings()
    assert settings is not None
    assert isinstance(settings.seed, int)
    assert settings.holonomy_rank_tol > 0


def test_settings_properties():
    """Test settings properties."""
    tolerances = Settings(_env_file=None).tolerances
    assert "rank_tol" in tolerances
    assert "holonomy_rank_tol" in tolerances
    assert "classifier_tol" in tolerances
    assert "ode_tol" in tolerances


def test_settings_from_environment(monkeypatch):
    """Настройки читаются из переменных окружения с префиксом SUBHOL_."""
    monkeypatch.setenv("SUBHOL_SEED", "42")
    monkeypatch.setenv("SUBHOL_AMBROSE_SINGER_PATHS", "3")
    settings = Settings(_env_file=None)
    assert settings.seed == 42
    assert settings.ambrose_singer_paths == 3
