"""Main entry point for subholonomy."""

import sys
import time
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import typer
from loguru import logger

from src.algebra.ideals import codim1_ideals_oracle
from src.builders.examples import build_example1, build_example2, build_sasakian_ball
from src.builders.heisenberg import build_heisenberg, build_perturbed_heisenberg
from src.classifier.bridge import classify_holonomy_pair
from src.classifier.decomposition import irreducible_decomposition
from src.classifier.ideal_cases import classify_codim1_ideal, codim1_ideal_representatives
from src.classifier.types import recognize_type
from src.config.settings import Settings, get_settings
from src.contact.connection import horizontal_connection, is_K_contact, tau_endomorphism
from src.contact.curvature import dtheta_inverse, pair_dtheta, schouten_curvature, wagner_endomorphism
from src.contact.structure import ContactStructure, reeb_field
from src.errors import ManifestError, SubholonomyError
from src.export.report_writer import ReportWriter
from src.holonomy.algebras import ambrose_singer_algebra, connection_for_mode, holonomy_by_sampling
from src.holonomy.verify import verify_codim_theorem, verify_reeb_transport, verify_wagner_holonomy, wagner_at
from src.models.algebra_file import AlgebraFile
from src.models.enums import HolonomyMode
from src.models.manifest import Manifest
from src.models.report import ErrorBlock, Report, ReportSection
from src.utils.logger import setup_logger

REEB_RADII = (0.1, 0.5, 1.0)
REEB_TOL = 1e-6

app = typer.Typer(
    help="Horizontal holonomy of contact sub-pseudo-Riemannian manifolds",
    no_args_is_help=True,
)


class RunContext:
    """Глобальные флаги одного запуска."""

    def __init__(self, settings: Settings, out: Optional[Path], tol: Optional[float], budget: Optional[int]):
        self.settings = settings
        self.out = out
        self.tol = tol
        self.budget = budget

    @property
    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.settings.seed)

    @property
    def holonomy_tol(self) -> float:
        return self.settings.holonomy_rank_tol if self.tol is None else self.tol

    @property
    def classifier_tol(self) -> float:
        return self.settings.classifier_tol if self.tol is None else self.tol


@app.callback()
def main(
    ctx: typer.Context,
    seed: Optional[int] = typer.Option(None, help="Random seed (default from settings)"),
    tol: Optional[float] = typer.Option(None, help="Rank / classifier tolerance override"),
    budget: Optional[int] = typer.Option(None, help="Number of random curves"),
    out: Optional[Path] = typer.Option(None, help="Write the report here instead of stdout"),
    log_level: Optional[str] = typer.Option(None, help="Logging level"),
):
    settings = get_settings()
    if seed is not None:
        settings = settings.model_copy(update={"seed": seed})
    setup_logger(log_level=log_level or settings.log_level, log_file=settings.log_file, serialize=settings.log_json)
    ctx.obj = RunContext(settings, out, tol, budget)


# ============================================================================
# HELPERS
# ============================================================================


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ManifestError(f"cannot read {path}: {e.strerror}") from e


def _timed(report: Report, name: str, fn: Callable[[], ReportSection]) -> ReportSection:
    start = time.perf_counter()
    section = fn()
    section.name = name
    return report.add(section, time.perf_counter() - start)


def _run(ctx: typer.Context, command: str, body: Callable[[Report, RunContext], None]) -> None:
    run: RunContext = ctx.obj
    report = Report(command=command, seed=run.settings.seed, tolerances=run.settings.tolerances)
    if run.tol is not None:
        report.tolerances["override"] = run.tol
    try:
        body(report, run)
    except SubholonomyError as e:
        logger.error(f"{command} failed: [{e.code}] {e.message}")
        report.error = ErrorBlock.from_error(e)
    ReportWriter(run.out).write(report)
    raise typer.Exit(code=report.exit_code)


def _load_structure(report: Report, path: str) -> tuple:
    manifest = Manifest.parse(_read_text(path))
    report.manifest_hash = manifest.manifest_hash()
    return manifest, manifest.to_structure()


def _emit(S: ContactStructure, matrix) -> list:
    return [[S.chart.emit(x) for x in row] for row in matrix]


def _emit_manifest(ctx: typer.Context, manifest: Manifest) -> None:
    run: RunContext = ctx.obj
    text = manifest.to_json()
    if run.out is None:
        sys.stdout.write(text)
    else:
        run.out.parent.mkdir(parents=True, exist_ok=True)
        run.out.write_text(text, encoding="utf-8")
        logger.info(f"✓ Manifest written to {run.out}")


def _manifest_command(ctx: typer.Context, build: Callable[[], Manifest]) -> None:
    try:
        manifest = build()
    except SubholonomyError as e:
        logger.error(f"[{e.code}] {e.message}")
        raise typer.Exit(code=e.exit_code)
    _emit_manifest(ctx, manifest)


# ============================================================================
# STRUCTURE COMMANDS
# ============================================================================


@app.command()
def reeb(ctx: typer.Context, manifest: str = typer.Argument(..., help="Manifest path or - for stdin")):
    """Reeb field and the K-contact verdict."""

    def body(report: Report, run: RunContext) -> None:
        m, S = _load_structure(report, manifest)

        def section() -> ReportSection:
            xi = reeb_field(S)
            k_contact = is_K_contact(S)
            passed = None if k_contact == m.flags.expect_K_contact else False
            return ReportSection(
                name="reeb",
                passed=passed,
                data={"xi": xi.emit(), "K_contact": k_contact, "expect_K_contact": m.flags.expect_K_contact},
            )

        _timed(report, "reeb", section)

    _run(ctx, "reeb", body)


@app.command()
def connection(ctx: typer.Context, manifest: str = typer.Argument(..., help="Manifest path or - for stdin")):
    """Horizontal connection coefficients and tau."""

    def body(report: Report, run: RunContext) -> None:
        _, S = _load_structure(report, manifest)

        def section() -> ReportSection:
            conn = horizontal_connection(S)
            gammas = [
                {"direction": a, "matrix": _emit(S, conn.connection_matrix(a))}
                for a in range(S.rank)
                if any(x for row in conn.connection_matrix(a) for x in row)
            ]
            return ReportSection(
                name="connection",
                data={"nonzero": gammas, "tau": _emit(S, tau_endomorphism(S)), "K_contact": is_K_contact(S)},
            )

        _timed(report, "connection", section)

    _run(ctx, "connection", body)


@app.command()
def curvature(ctx: typer.Context, manifest: str = typer.Argument(..., help="Manifest path or - for stdin")):
    """Schouten curvature table, (d theta)^{-1} and its pairing with d theta."""

    def body(report: Report, run: RunContext) -> None:
        _, S = _load_structure(report, manifest)

        def section() -> ReportSection:
            R = schouten_curvature(S)
            inverse = dtheta_inverse(S)
            pairing = pair_dtheta(S, inverse)
            return ReportSection(
                name="curvature",
                passed=pairing == S.chart.const(-4 * S.m),
                data={
                    "table": R.table(),
                    "dtheta_inverse": _emit(S, inverse),
                    "dtheta_pairing": S.chart.emit(pairing),
                },
            )

        _timed(report, "curvature", section)

    _run(ctx, "curvature", body)


@app.command()
def wagner(ctx: typer.Context, manifest: str = typer.Argument(..., help="Manifest path or - for stdin")):
    """N^W = R((d theta)^{-1}) / 4m, symbolic and at the basepoint."""

    def body(report: Report, run: RunContext) -> None:
        _, S = _load_structure(report, manifest)

        def section() -> ReportSection:
            N = wagner_endomorphism(S)
            return ReportSection(
                name="wagner",
                data={"N": _emit(S, N), "N_at_basepoint": wagner_at(S, [S.basepoint_floats()])[0]},
            )

        _timed(report, "wagner", section)

    _run(ctx, "wagner", body)


# ============================================================================
# HOLONOMY
# ============================================================================


@app.command()
def holonomy(
    ctx: typer.Context,
    manifest: str = typer.Argument(..., help="Manifest path or - for stdin"),
    mode: HolonomyMode = typer.Option(HolonomyMode.HORIZONTAL, help="horizontal, adapted or wagner"),
):
    """Holonomy algebra at the basepoint."""

    def body(report: Report, run: RunContext) -> None:
        _, S = _load_structure(report, manifest)
        settings = run.settings.model_copy(update={"holonomy_rank_tol": run.holonomy_tol})

        def section() -> ReportSection:
            if mode == HolonomyMode.WAGNER:
                estimate = holonomy_by_sampling(
                    S, connection_for_mode(S, mode), tol=run.holonomy_tol, settings=settings, rng=run.rng
                )
            else:
                estimate = ambrose_singer_algebra(S, None, mode, run.budget, settings, run.rng)
            return ReportSection(name="holonomy", tol=run.holonomy_tol, data=estimate.to_dict())

        _timed(report, "holonomy", section)

    _run(ctx, "holonomy", body)


@app.command()
def verify(ctx: typer.Context, manifest: str = typer.Argument(..., help="Manifest path or - for stdin")):
    """Codimension check, Reeb-orbit transport check, Wagner cross-check and classification."""

    def body(report: Report, run: RunContext) -> None:
        _, S = _load_structure(report, manifest)
        settings = run.settings.model_copy(update={"holonomy_rank_tol": run.holonomy_tol})
        tol = run.holonomy_tol
        state = {}

        def codim_section() -> ReportSection:
            result = verify_codim_theorem(S, None, run.budget, tol, settings, run.rng)
            state["codim"] = result
            return ReportSection(name="codim", tol=tol, passed=result.passed, data=result.to_dict())

        def reeb_section() -> ReportSection:
            checks = [verify_reeb_transport(S, None, r, REEB_TOL, settings.ode_tol, settings) for r in REEB_RADII]
            return ReportSection(
                name="reeb_transport",
                tol=REEB_TOL,
                passed=all(c.passed for c in checks),
                data={"checks": [c.to_dict() for c in checks]},
            )

        def wagner_section() -> ReportSection:
            result = verify_wagner_holonomy(S, None, state["codim"].horizontal, tol, settings, run.rng)
            return ReportSection(name="wagner_holonomy", tol=tol, passed=result.equal, data=result.to_dict())

        def classification_section() -> ReportSection:
            if not S.is_lorentzian():
                return ReportSection(name="classification", data={"notes": ["metric is not Lorentzian"]})
            result = state["codim"]
            gram = np.array(S.metric.gram_at(S.basepoint).tolist(), dtype=float)
            labels = classify_holonomy_pair(result.horizontal_algebra, result.adapted_algebra, gram, tol)
            return ReportSection(
                name="classification", tol=tol, passed=False if labels.failed else None, data=labels.to_dict()
            )

        _timed(report, "codim", codim_section)
        _timed(report, "reeb_transport", reeb_section)
        _timed(report, "wagner_holonomy", wagner_section)
        _timed(report, "classification", classification_section)

    _run(ctx, "verify", body)


# ============================================================================
# CLASSIFIER
# ============================================================================


def _load_algebra(report: Report, path: str, tol: float):
    data = AlgebraFile.parse(_read_text(path))
    return data, data.algebra(tol)


@app.command()
def classify(ctx: typer.Context, algebra_file: str = typer.Argument(..., help="Algebra file or - for stdin")):
    """Type 1-4 of a subalgebra of so(1,k+1)_Rp and the decomposition of its orthogonal part."""

    def body(report: Report, run: RunContext) -> None:
        tol = run.classifier_tol

        def section() -> ReportSection:
            _, g = _load_algebra(report, algebra_file, tol)
            desc = recognize_type(g, tol)
            data = {"dim": g.dim, **desc.to_dict()}
            if desc.is_known:
                data["decomposition"] = irreducible_decomposition(desc.h, tol, run.settings.seed).to_dict()
            return ReportSection(name="classify", tol=tol, data=data)

        _timed(report, "classify", section)

    _run(ctx, "classify", body)


@app.command()
def ideals(ctx: typer.Context, algebra_file: str = typer.Argument(..., help="Algebra file or - for stdin")):
    """Representative codimension-one ideals per case, and labels of the oracle family."""

    def body(report: Report, run: RunContext) -> None:
        tol = run.classifier_tol

        def section() -> ReportSection:
            _, g = _load_algebra(report, algebra_file, tol)
            desc = recognize_type(g, tol)
            representatives = codim1_ideal_representatives(g, tol, desc)
            family = codim1_ideals_oracle(g)
            oracle_labels = [classify_codim1_ideal(g, I, tol, desc).to_dict() for I in family.representatives]
            return ReportSection(
                name="ideals",
                tol=tol,
                data={
                    "type": desc.kind.value,
                    "representatives": [
                        {"label": label.to_dict(), "dim": I.dim, "basis": I.to_lists()} for label, I in representatives
                    ],
                    "family": family.to_dict(),
                    "family_labels": oracle_labels,
                },
            )

        _timed(report, "ideals", section)

    _run(ctx, "ideals", body)


# ============================================================================
# MANIFEST BUILDERS
# ============================================================================


@app.command()
def example1(ctx: typer.Context, s: int = typer.Option(2, "--s", help="s >= 2")):
    """Emit the Example 1 manifest."""
    _manifest_command(ctx, lambda: build_example1(s))


@app.command()
def example2(
    ctx: typer.Context,
    s: int = typer.Option(1, "--s", help="s in {1, 2}"),
    certify: bool = typer.Option(True, help="Check the adapted holonomy dimension before emitting"),
):
    """Emit the Example 2 manifest."""
    _manifest_command(ctx, lambda: build_example2(s, certify=certify, settings=ctx.obj.settings))


@app.command("sasakian-ball")
def sasakian_ball(ctx: typer.Context, s: int = typer.Option(2, "--s", help="s >= 2")):
    """Emit the Sasakian structure over the complex hyperbolic ball."""
    _manifest_command(ctx, lambda: build_sasakian_ball(s))


@app.command()
def heisenberg(
    ctx: typer.Context,
    m: int = typer.Option(2, help="m >= 2, n = 2m + 1"),
    negative: int = typer.Option(0, help="Number of negative directions of the gram"),
    perturb: Optional[int] = typer.Option(None, help="Seed of a K-contact polynomial perturbation"),
):
    """Emit a flat or perturbed Heisenberg-type manifest."""
    if perturb is None:
        _manifest_command(ctx, lambda: build_heisenberg(m, negative))
    else:
        _manifest_command(ctx, lambda: build_perturbed_heisenberg(perturb, m, negative))


if __name__ == "__main__":
    app()
