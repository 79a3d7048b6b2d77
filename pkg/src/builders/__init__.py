"""Manifest builders for the example families and the test corpus."""

from src.builders.examples import (
    ball_metric,
    build_example1,
    build_example2,
    build_sasakian_ball,
    certify_example2,
    example2_target,
    kaehler_pairing,
)
from src.builders.heisenberg import build_heisenberg, build_perturbed_heisenberg

__all__ = [
    "ball_metric",
    "build_example1",
    "build_example2",
    "build_heisenberg",
    "build_perturbed_heisenberg",
    "build_sasakian_ball",
    "certify_example2",
    "example2_target",
    "kaehler_pairing",
]
