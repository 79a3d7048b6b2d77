#!/usr/bin/env python3
"""Прогон приёмочных проверок: примеры, корпус классификатора, численная гигиена."""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import time
from typing import Callable, List, Tuple

import numpy as np
import sympy as sp
import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from src.algebra.ideals import codim, codim1_ideals_oracle, is_ideal
from src.algebra.matrix_functions import matrix_exp
from src.builders.examples import ball_metric, build_example1, build_example2, build_sasakian_ball, kaehler_pairing
from src.builders.heisenberg import build_heisenberg, build_perturbed_heisenberg
from src.chart.matrices import fmat_equal
from src.classifier.catalog import corpus
from src.classifier.ideal_cases import classify_codim1_ideal, codim1_ideal_representatives
from src.config.settings import get_settings
from src.contact.connection import horizontal_connection
from src.contact.curvature import dtheta_inverse, pair_dtheta, schouten_curvature
from src.errors import SubholonomyError
from src.holonomy.horizontalize import horizontal_lift
from src.holonomy.loops import random_path
from src.holonomy.transport import parallel_transport
from src.holonomy.verify import verify_codim_theorem, verify_reeb_transport, verify_wagner_holonomy
from src.utils.logger import setup_logger

console = Console()
app = typer.Typer(add_completion=False)

Check = Tuple[bool, str]

# max-entry norm; concatenation and inversion use 2 * ode_tol
EXP_ADDITIVITY_TOL = 1e-10
HYGIENE_TRANSPORTS = 100


def example1_codim(settings) -> Check:
    report = verify_codim_theorem(build_example1(2).to_structure(), settings=settings)
    return report.passed, f"dims {report.horizontal.dim}/{report.adapted.dim}, codim {report.codim}"


def example1_curvature(settings) -> Check:
    S = build_example1(2).to_structure()
    R = schouten_curvature(S)
    g, rank = S.metric.gram, S.rank
    last = rank - 1
    zero = S.chart.zero
    ok = R.nonzero_pairs() == [(i, last) for i in range(1, last)]
    for i in range(1, last):
        expected = [
            [(g[i][c] if e == 0 else zero) - (g[0][c] if e == i else zero) for c in range(rank)]
            for e in range(rank)
        ]
        ok = ok and fmat_equal(R(i, last), expected)
    return ok, f"{len(R.nonzero_pairs())} nonzero pairs"


def pairing_anchors(settings) -> Check:
    structures = [
        build_example1(2).to_structure(),
        build_example2(1, certify=False).to_structure(),
        build_example2(2, certify=False).to_structure(),
    ]
    ok = all(pair_dtheta(S, dtheta_inverse(S)) == S.chart.const(-4 * S.m) for S in structures)
    kaehler = [kaehler_pairing(ball_metric(s)) for s in (1, 2)]
    ok = ok and all(sp.simplify(value - 2 * s) == 0 for value, s in zip(kaehler, (1, 2)))
    return ok, f"-4m on {len(structures)} manifests, d theta_0(J) = {[str(v) for v in kaehler]}"


def reeb_transport(settings) -> Check:
    S = build_example1(2).to_structure()
    checks = [verify_reeb_transport(S, r=r, tol=1e-6, ode_tol=1e-9, settings=settings) for r in (0.1, 0.5, 1.0)]
    return all(c.passed for c in checks), "defects " + ", ".join(f"{c.defect:.1e}" for c in checks)


def wagner_holonomy(settings) -> Check:
    comparison = verify_wagner_holonomy(build_example1(2).to_structure(), settings=settings)
    return comparison.equal, f"dims {comparison.wagner.dim} vs {comparison.horizontal.dim}"


def property_suite(settings) -> Check:
    manifests = [
        build_example1(2),
        build_example2(1, certify=False),
        build_heisenberg(2),
        build_sasakian_ball(2),
        *[build_perturbed_heisenberg(seed) for seed in (1, 2, 3)],
    ]
    rows = []
    ok = True
    for manifest in manifests:
        report = verify_codim_theorem(manifest.to_structure(), settings=settings)
        ok = ok and report.passed
        rows.append(f"{manifest.name}:{report.codim}")
    return ok, " ".join(rows)


def classifier_corpus(settings) -> Check:
    entries = corpus()
    labelled = 0
    ok = len(entries) >= 12
    for entry in entries:
        g = entry.algebra
        representatives = codim1_ideal_representatives(g)
        if entry.name == "g2_so3_k3":
            ok = ok and not representatives
        for _, I in representatives:
            ok = ok and codim(I, g, 1e-8) == 1 and is_ideal(I, g, 1e-8)
        for I in codim1_ideals_oracle(g).representatives:
            classify_codim1_ideal(g, I)
            labelled += 1
    return ok, f"{len(entries)} algebras, {labelled} oracle ideals labelled"


def numerical_hygiene(settings, count: int = HYGIENE_TRANSPORTS) -> Check:
    S = build_example1(2).to_structure()
    conn = horizontal_connection(S)
    rng = np.random.default_rng(settings.seed)
    x = S.basepoint_floats()
    worst = 0.0
    identity_tol = 2 * settings.ode_tol
    ok = True
    for _ in range(count):
        first, _ = horizontal_lift(S, random_path(x, 0.2, rng), settings=settings)
        second, _ = horizontal_lift(S, random_path(first.end(), 0.2, rng), settings=settings)
        t1 = parallel_transport(conn, first, settings=settings)
        t2 = parallel_transport(conn, second, settings=settings)
        whole = parallel_transport(conn, first.then(second), settings=settings)
        back = parallel_transport(conn, first.reversed(), settings=settings)
        G0, G1 = S.numeric.gram_at(first.start()), S.numeric.gram_at(first.end())
        worst = max(worst, t1.isometry_defect(G0, G1))
        ok = ok and t1.isometry_defect(G0, G1) <= max(10 * t1.est_error, 1e-12)
        ok = ok and np.max(np.abs(whole.matrix - t1.then(t2).matrix)) <= identity_tol
        ok = ok and np.max(np.abs(back.matrix @ t1.matrix - np.eye(S.rank))) <= identity_tol
    A = 0.5 * rng.standard_normal((S.rank, S.rank))
    ok = ok and np.max(np.abs(matrix_exp(A, 0.3) @ matrix_exp(A, 0.7) - matrix_exp(A, 1.0))) <= EXP_ADDITIVITY_TOL
    return ok, f"{count} transports, worst isometry defect {worst:.1e}"


def example2_dims(settings) -> Check:
    rows = []
    ok = True
    for s in (1, 2):
        report = verify_codim_theorem(build_example2(s, settings=settings).to_structure(), settings=settings)
        ok = ok and report.passed
        rows.append(f"s={s}: {report.horizontal.dim}/{report.adapted.dim}")
    return ok, ", ".join(rows)


CHECKS: List[Tuple[str, Callable]] = [
    ("Example 1 codimension", example1_codim),
    ("Example 1 curvature table", example1_curvature),
    ("Pairing anchors", pairing_anchors),
    ("Reeb transport", reeb_transport),
    ("Wagner holonomy", wagner_holonomy),
    ("K-contact property suite", property_suite),
    ("Classifier corpus", classifier_corpus),
    ("Numerical hygiene", numerical_hygiene),
    ("Example 2 dimensions", example2_dims),
]


@app.command()
def main(
    only: str = typer.Option("", help="Comma-separated check numbers, e.g. 1,3"),
    log_level: str = typer.Option("WARNING", help="Logging level"),
):
    """Run the acceptance checks and print a summary table."""
    setup_logger(log_level=log_level)
    settings = get_settings()
    selected = {int(v) for v in only.split(",") if v.strip()} or set(range(1, len(CHECKS) + 1))

    table = Table(title="subholonomy acceptance", show_header=True)
    table.add_column("#", style="cyan")
    table.add_column("Check", style="cyan")
    table.add_column("Status", style="green")
    table.add_column("Details")
    table.add_column("Time, s", style="yellow")

    failures = 0
    for number, (name, check) in enumerate(CHECKS, start=1):
        if number not in selected:
            continue
        start = time.perf_counter()
        try:
            passed, details = check(settings)
        except SubholonomyError as e:
            logger.error(f"{name}: [{e.code}] {e.message}")
            passed, details = False, f"{e.code}: {e.message}"
        failures += not passed
        table.add_row(str(number), name, "✓" if passed else "✗", details, f"{time.perf_counter() - start:.1f}")

    console.print(table)
    raise typer.Exit(code=1 if failures else 0)


if __name__ == "__main__":
    app()
