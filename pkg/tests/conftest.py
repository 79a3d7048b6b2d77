"""Shared fixtures: built structures are expensive, so they live for the session."""

import numpy as np
import pytest

from src.builders.examples import build_example1, build_sasakian_ball
from src.builders.heisenberg import build_heisenberg
from src.classifier.catalog import corpus
from src.config.settings import Settings
from src.utils.logger import setup_logger


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    setup_logger(log_level="WARNING")


@pytest.fixture(scope="session")
def fast_settings() -> Settings:
    """Маленькие бюджеты для тестов."""
    return Settings(
        _env_file=None,
        ambrose_singer_paths=6,
        loops_per_plane=4,
        loop_scales=(0.05, 0.1),
        seed=7,
    )


@pytest.fixture(scope="session")
def default_settings() -> Settings:
    """Бюджеты по умолчанию, фиксированный seed."""
    return Settings(_env_file=None, seed=7)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(11)


@pytest.fixture(scope="session")
def heisenberg_manifest():
    return build_heisenberg(2)


@pytest.fixture(scope="session")
def heisenberg(heisenberg_manifest):
    return heisenberg_manifest.to_structure()


@pytest.fixture(scope="session")
def example1_manifest():
    return build_example1(2)


@pytest.fixture(scope="session")
def example1(example1_manifest):
    return example1_manifest.to_structure()


@pytest.fixture(scope="session")
def sasakian_ball_manifest():
    return build_sasakian_ball(2)


@pytest.fixture(scope="session")
def sasakian_ball(sasakian_ball_manifest):
    return sasakian_ball_manifest.to_structure()


@pytest.fixture(scope="session")
def corpus_entries():
    return corpus()
