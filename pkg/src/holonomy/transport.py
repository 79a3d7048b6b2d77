"""Parallel transport of the D-frame along chart curves (RK4 + Richardson)."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.config.settings import Settings, get_settings
from src.contact.connection import ConnectionCoeffs
from src.errors import NonHorizontalCurveError, ToleranceNotReachedError
from src.holonomy.curves import ChartCurve, Segment
from src.holonomy.horizontalize import horizontality_defect

EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class TransportResult:
    """
    Результат переноса.

    matrix maps frame components at the start to frame components at the end;
    est_error is the summed Richardson estimate over the segments.
    """

    matrix: np.ndarray
    est_error: float
    steps: int
    label: str = "horizontal"

    def isometry_defect(self, gram_start: np.ndarray, gram_end: np.ndarray) -> float:
        """||M^T G(end) M - G(start)||, max-entry norm."""
        M = self.matrix
        return float(np.max(np.abs(M.T @ gram_end @ M - gram_start)))

    def then(self, other: "TransportResult") -> "TransportResult":
        """Transport along this curve followed by other."""
        return TransportResult(
            matrix=other.matrix @ self.matrix,
            est_error=self.est_error + other.est_error,
            steps=self.steps + other.steps,
            label=self.label,
        )


def _rk4(generators: np.ndarray, steps: int) -> np.ndarray:
    """T' = -A T on [0, 1]; generators holds A at the 2*steps+1 half-step nodes."""
    rank = generators.shape[1]
    h = 1.0 / steps
    T = np.eye(rank)
    for k in range(steps):
        A0, Am, A1 = generators[2 * k], generators[2 * k + 1], generators[2 * k + 2]
        k1 = -A0 @ T
        k2 = -Am @ (T + 0.5 * h * k1)
        k3 = -Am @ (T + 0.5 * h * k2)
        k4 = -A1 @ (T + h * k3)
        T = T + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return T


def _segment_generators(conn: ConnectionCoeffs, seg: Segment, steps: int) -> np.ndarray:
    numeric = conn.structure.numeric
    s = np.linspace(0.0, 1.0, 2 * steps + 1)
    points = seg.position(s)
    splits = numeric.frame_split_batch(points, seg.velocity(s))
    return conn.numeric.generators_batch(points, splits)


def transport_segment(
    conn: ConnectionCoeffs, seg: Segment, tol: float, settings: Settings
) -> Tuple[np.ndarray, float, int]:
    """
    Raises:
        ToleranceNotReachedError: step fell below ode_min_step before the estimate met tol
    """
    steps = settings.ode_initial_steps
    coarse = _rk4(_segment_generators(conn, seg, steps), steps)
    while True:
        fine_steps = 2 * steps
        if 1.0 / fine_steps < settings.ode_min_step:
            logger.error(f"transport did not reach {tol:.1e} at the minimum step")
            raise ToleranceNotReachedError(
                "transport tolerance not reached at minimum step",
                {"tol": tol, "min_step": settings.ode_min_step},
            )
        fine = _rk4(_segment_generators(conn, seg, fine_steps), fine_steps)
        # rounding accumulates like eps per step
        err = max(float(np.max(np.abs(fine - coarse))) / 15.0, EPS * fine_steps)
        if err <= tol:
            return fine, err, fine_steps
        steps, coarse = fine_steps, fine


def parallel_transport(
    conn: ConnectionCoeffs,
    curve: ChartCurve,
    tol: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> TransportResult:
    """
    Transport of the identity frame along curve: y' = -(sum_a w^a G_a + theta(gamma') G_xi) y.

    Raises:
        NonHorizontalCurveError: horizontal-only connection on a curve with theta(gamma') != 0
        PoleError: coefficient pole along the curve
        ToleranceNotReachedError: step halving exhausted
    """
    settings = settings or get_settings()
    tol = settings.ode_tol if tol is None else tol
    numeric = conn.structure.numeric
    samples = settings.horizontality_samples

    numeric.check_poles(curve.samples(samples)[0])
    if not conn.is_extended:
        defect = horizontality_defect(numeric, curve, samples)
        if defect > settings.horizontality_tol:
            logger.error(f"curve with |theta(gamma')| = {defect:.2e} given to '{conn.label}'")
            raise NonHorizontalCurveError(
                "connection is defined only along D; curve is not horizontal",
                {"defect": defect, "tol": settings.horizontality_tol},
            )

    per_segment = tol / len(curve)
    rank = conn.structure.rank
    matrix = np.eye(rank)
    error = 0.0
    steps = 0
    for seg in curve.segments:
        T, err, used = transport_segment(conn, seg, per_segment, settings)
        matrix = T @ matrix
        error += err
        steps += used

    logger.debug(f"transport ({conn.label}): {len(curve)} segments, {steps} steps, est. error {error:.1e}")
    return TransportResult(matrix=matrix, est_error=error, steps=steps, label=conn.label)
