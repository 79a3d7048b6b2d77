"""Heisenberg-type structures: flat, and K-contact polynomial perturbations."""

from typing import List, Optional

import numpy as np
from loguru import logger

from src.chart.chart import Chart
from src.chart.fields import FrameMetric, OneForm, VectorField
from src.contact.structure import ContactStructure
from src.errors import PreconditionError
from src.models.manifest import Manifest, ManifestFlags

PERTURBATION_TERMS = 2


def _heisenberg_chart(m: int) -> Chart:
    return Chart(["t", *[f"x{i}" for i in range(1, 2 * m + 1)]])


def _heisenberg_frame(chart: Chart, m: int):
    """theta = dt + sum x_{2i-1} dx_{2i}; X_{2i-1} = d_{2i-1}, X_{2i} = d_{2i} - x_{2i-1} d_t."""
    theta = [chart.zero] * chart.n
    theta[0] = chart.one
    frame = []
    t = VectorField.coordinate(chart, "t")
    for i in range(1, m + 1):
        odd = chart.gen(f"x{2 * i - 1}")
        theta[chart.index(f"x{2 * i}")] = odd
        frame.append(VectorField.coordinate(chart, f"x{2 * i - 1}"))
        frame.append(VectorField.coordinate(chart, f"x{2 * i}") - t.scale(odd))
    return OneForm(chart, tuple(theta)), tuple(frame)


def _signs(m: int, negative: int) -> List[int]:
    if not 0 <= negative <= 2 * m:
        raise PreconditionError("number of negative directions out of range", {"negative": negative, "rank": 2 * m})
    return [-1] * negative + [1] * (2 * m - negative)


def build_heisenberg(m: int = 2, negative: int = 0) -> Manifest:
    """
    Flat model: constant diagonal gram with `negative` entries -1.

    Raises:
        PreconditionError: m < 2 or negative out of range
    """
    if m < 2:
        raise PreconditionError("Heisenberg structure needs m >= 2 (n >= 5)", {"m": m})
    chart = _heisenberg_chart(m)
    theta, frame = _heisenberg_frame(chart, m)
    signs = _signs(m, negative)
    gram = tuple(
        tuple(chart.const(signs[a]) if a == b else chart.zero for b in range(2 * m)) for a in range(2 * m)
    )
    S = ContactStructure(chart, theta, FrameMetric(frame, gram), [0] * chart.n, name=f"heisenberg_m{m}_q{negative}")
    return Manifest.from_structure(S, ManifestFlags(expect_K_contact=True, note="flat Heisenberg-type model"))


def build_perturbed_heisenberg(seed: int, m: int = 2, negative: int = 0, scale: int = 10) -> Manifest:
    """
    Flat model plus t-independent polynomial terms vanishing at the origin.

    The gram does not depend on t, so d_t stays a Killing Reeb field.
    """
    if m < 2:
        raise PreconditionError("Heisenberg structure needs m >= 2 (n >= 5)", {"m": m})
    rng = np.random.default_rng(seed)
    chart = _heisenberg_chart(m)
    theta, frame = _heisenberg_frame(chart, m)
    signs = _signs(m, negative)
    x = [chart.gen(f"x{i}") for i in range(1, 2 * m + 1)]

    rank = 2 * m
    entries = [[chart.const(signs[a]) if a == b else chart.zero for b in range(rank)] for a in range(rank)]
    for a in range(rank):
        for b in range(a, rank):
            term = chart.zero
            for _ in range(PERTURBATION_TERMS):
                coeff = chart.const(f"{int(rng.integers(-3, 4))}/{scale}")
                i, j = (int(v) for v in rng.integers(0, rank, size=2))
                monomial = x[i] if rng.random() < 0.5 else x[i] * x[j]
                term += coeff * monomial
            entries[a][b] += term
            if a != b:
                entries[b][a] += term

    gram = tuple(tuple(row) for row in entries)
    S = ContactStructure(
        chart, theta, FrameMetric(frame, gram), [0] * chart.n, name=f"perturbed_heisenberg_{seed}"
    )
    logger.debug(f"perturbed Heisenberg structure, seed {seed}")
    return Manifest.from_structure(S, ManifestFlags(expect_K_contact=True, note=f"polynomial perturbation, seed {seed}"))
