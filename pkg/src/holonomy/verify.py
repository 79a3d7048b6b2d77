"""
Numerical checks of the structural statements about horizontal holonomy.

* verify_codim_theorem: hol(nabla^g) is an ideal of codimension <= 1 in
  hol(nabla^tau), completed by C_x when the codimension is one;
* verify_reeb_transport: along a Reeb orbit tau^tau = tau^W e^{rC_x} = e^{rC_y} tau^W;
* verify_wagner_holonomy: loop sampling of nabla^W reproduces hol(nabla^g).
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.algebra.ideals import codim, is_ideal
from src.algebra.lie_span import LieAlgebraSpan, span_basis, sum_spans
from src.algebra.matrix_functions import matrix_exp
from src.chart.numeric import LambdifiedArray
from src.config.settings import Settings, get_settings
from src.contact.connection import adapted_connection, extended_connection, horizontal_connection, is_K_contact
from src.contact.curvature import wagner_endomorphism
from src.contact.structure import ContactStructure
from src.errors import PreconditionError
from src.holonomy.algebras import HolonomyEstimate, ambrose_singer_algebra, holonomy_by_sampling
from src.holonomy.curves import ChartCurve
from src.holonomy.horizontalize import reeb_segment
from src.holonomy.reeb_flow import ReebFlow
from src.holonomy.transport import parallel_transport
from src.models.enums import HolonomyMode


def _require_K_contact(S: ContactStructure, what: str) -> None:
    if not is_K_contact(S):
        logger.error(f"{what} refused: '{S.name}' is not K-contact")
        raise PreconditionError(f"{what} assumes a K-contact structure", {"structure": S.name})


def wagner_at(S: ContactStructure, points: Sequence[Sequence[float]]) -> np.ndarray:
    """N^W (= C in the K-contact case) at the given chart points, shape (N, 2m, 2m)."""
    return LambdifiedArray(S.chart, wagner_endomorphism(S)).batch(np.atleast_2d(points))


# ============================================================================
# CODIMENSION ONE
# ============================================================================


@dataclass(frozen=True)
class HolonomyReport:
    """
    Итог проверки коразмерности.

    codim and is_ideal are reported as computed; passed is False whenever any
    of the checks fails, nothing is clamped.
    """

    horizontal: HolonomyEstimate
    adapted: HolonomyEstimate
    contained: bool
    is_ideal: bool
    codim: int
    C_in_complement: bool
    passed: bool
    C_x: Optional[np.ndarray] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def horizontal_algebra(self) -> LieAlgebraSpan:
        return self.horizontal.algebra

    @property
    def adapted_algebra(self) -> LieAlgebraSpan:
        return self.adapted.algebra

    def to_dict(self) -> dict:
        return {
            "horizontal": self.horizontal.to_dict(),
            "adapted": self.adapted.to_dict(),
            "contained": self.contained,
            "is_ideal": self.is_ideal,
            "codim": self.codim,
            "C_in_complement": self.C_in_complement,
            "C_x": None if self.C_x is None else self.C_x.tolist(),
            "passed": self.passed,
            "notes": list(self.notes),
            "tol": self.horizontal.tol,
        }


def verify_codim_theorem(
    S: ContactStructure,
    x: Optional[Sequence] = None,
    budget: Optional[int] = None,
    tol: Optional[float] = None,
    settings: Optional[Settings] = None,
    rng: Optional[np.random.Generator] = None,
) -> HolonomyReport:
    """
    Both Ambrose-Singer algebras at x and their relation.

    Raises:
        PreconditionError: structure is not K-contact
        ClosureNotConvergedError: propagated from the closures
    """
    settings = settings or get_settings()
    rng = rng or np.random.default_rng(settings.seed)
    tol = settings.holonomy_rank_tol if tol is None else tol
    _require_K_contact(S, "codimension check")
    x = S.basepoint_floats() if x is None else np.asarray(x, dtype=float)

    horizontal = ambrose_singer_algebra(S, x, HolonomyMode.HORIZONTAL, budget, settings, rng)
    adapted = ambrose_singer_algebra(S, x, HolonomyMode.ADAPTED, budget, settings, rng)
    h, a = horizontal.algebra, adapted.algebra
    C_x = wagner_at(S, [x])[0]

    notes = []
    contained = a.contains_span(h, tol)
    if contained:
        ideal = is_ideal(h, a, tol)
        codimension = codim(h, a, tol)
    else:
        ideal = False
        codimension = a.dim - h.dim
        notes.append("horizontal algebra is not contained in the adapted one")

    completes = False
    if codimension == 1:
        C_span = span_basis([C_x], tol, S.rank)
        completes = (not h.contains(C_x, tol)) and sum_spans(h, C_span, tol=tol).equals(a, tol)
        if not completes:
            notes.append("C_x does not complete the horizontal algebra")
    elif codimension == 0:
        notes.append("algebras coincide")
    else:
        notes.append(f"codimension {codimension} outside {{0, 1}}")

    passed = contained and ideal and codimension in (0, 1) and (codimension == 0 or completes)
    for estimate in (horizontal, adapted):
        if not estimate.stable:
            notes.append(f"{estimate.mode} dimension not stable over the second half of the budget")

    report = HolonomyReport(
        horizontal=horizontal,
        adapted=adapted,
        contained=contained,
        is_ideal=ideal,
        codim=codimension,
        C_in_complement=completes,
        passed=passed,
        C_x=C_x,
        notes=tuple(notes),
    )
    if passed:
        logger.info(f"✓ codimension check on '{S.name}': dims {h.dim} / {a.dim}, codim {codimension}")
    else:
        logger.error(f"codimension check FAILED on '{S.name}': {'; '.join(notes)}")
    return report


# ============================================================================
# REEB ORBITS
# ============================================================================


@dataclass(frozen=True)
class ReebTransportCheck:
    """max of the two defects; est_error is the summed transport error."""

    r: float
    defect_x: float
    defect_y: float
    est_error: float
    tol: float

    @property
    def defect(self) -> float:
        return max(self.defect_x, self.defect_y)

    @property
    def passed(self) -> bool:
        return self.defect <= self.tol

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "defect": self.defect,
            "defect_x": self.defect_x,
            "defect_y": self.defect_y,
            "est_error": self.est_error,
            "tol": self.tol,
            "passed": self.passed,
        }


def verify_reeb_transport(
    S: ContactStructure,
    x: Optional[Sequence] = None,
    r: float = 1.0,
    tol: float = 1e-6,
    ode_tol: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> ReebTransportCheck:
    """
    Compare tau^tau and tau^W along lambda(s) = phi_s(x), s in [0, r].

    Raises:
        PreconditionError: structure is not K-contact
        FlowExitError: the orbit leaves the chart
    """
    settings = settings or get_settings()
    _require_K_contact(S, "Reeb transport check")
    x = S.basepoint_floats() if x is None else np.asarray(x, dtype=float)

    base = horizontal_connection(S)
    N = wagner_endomorphism(S)
    adapted = adapted_connection(S, base)
    wagner = extended_connection(S, N, label="wagner", base=base)

    if r == 0.0:
        return ReebTransportCheck(r=0.0, defect_x=0.0, defect_y=0.0, est_error=0.0, tol=tol)

    orbit = ChartCurve((reeb_segment(S, ReebFlow(S.numeric), x, r),))
    y = orbit.end()
    tau = parallel_transport(adapted, orbit, ode_tol, settings)
    tau_w = parallel_transport(wagner, orbit, ode_tol, settings)
    C = LambdifiedArray(S.chart, N).batch(np.vstack([x, y]))

    defect_x = float(np.max(np.abs(tau.matrix - tau_w.matrix @ matrix_exp(C[0], r))))
    defect_y = float(np.max(np.abs(tau.matrix - matrix_exp(C[1], r) @ tau_w.matrix)))
    check = ReebTransportCheck(
        r=float(r),
        defect_x=defect_x,
        defect_y=defect_y,
        est_error=tau.est_error + tau_w.est_error,
        tol=tol,
    )
    logger.info(f"Reeb transport check on '{S.name}' at r={r}: defect {check.defect:.2e} (tol {tol:.0e})")
    return check


# ============================================================================
# WAGNER CONNECTION
# ============================================================================


@dataclass(frozen=True)
class WagnerComparison:
    """Sampled hol(nabla^W) against the horizontal Ambrose-Singer algebra."""

    wagner: HolonomyEstimate
    horizontal: HolonomyEstimate
    equal: bool
    tol: float

    def to_dict(self) -> dict:
        return {
            "wagner": self.wagner.to_dict(),
            "horizontal": self.horizontal.to_dict(),
            "equal": self.equal,
            "tol": self.tol,
        }


def verify_wagner_holonomy(
    S: ContactStructure,
    x: Optional[Sequence] = None,
    horizontal: Optional[HolonomyEstimate] = None,
    tol: Optional[float] = None,
    settings: Optional[Settings] = None,
    rng: Optional[np.random.Generator] = None,
) -> WagnerComparison:
    """Mutual span containment of the two algebras at tol."""
    settings = settings or get_settings()
    rng = rng or np.random.default_rng(settings.seed)
    tol = settings.holonomy_rank_tol if tol is None else tol
    x = S.basepoint_floats() if x is None else np.asarray(x, dtype=float)

    if horizontal is None:
        horizontal = ambrose_singer_algebra(S, x, HolonomyMode.HORIZONTAL, settings=settings, rng=rng)
    base = horizontal_connection(S)
    wagner_conn = extended_connection(S, wagner_endomorphism(S), label="wagner", base=base)
    wagner = holonomy_by_sampling(S, wagner_conn, x, tol=tol, settings=settings, rng=rng)

    equal = wagner.algebra.equals(horizontal.algebra, tol)
    if equal:
        logger.info(f"✓ Wagner holonomy of '{S.name}' matches the horizontal algebra (dim {wagner.dim})")
    else:
        logger.error(f"Wagner holonomy dim {wagner.dim} differs from horizontal dim {horizontal.dim}")
    return WagnerComparison(wagner=wagner, horizontal=horizontal, equal=equal, tol=tol)
