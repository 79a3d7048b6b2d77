"""Flow of the Reeb field and its tangent map."""

from typing import Tuple

import numpy as np
from loguru import logger

from src.contact.numeric import NumericStructure
from src.errors import FlowExitError, PoleError, ToleranceNotReachedError

MAX_FLOW_STEPS = 4096


class ReebFlow:
    """
    phi_t(x) for many (x, t) pairs at once.

    Constant xi: exact translation x + t xi with identity tangent map.
    Otherwise RK4 on s in [0, 1] for y' = t xi(y), J' = t Dxi(y) J, with step
    doubling until the Richardson estimate is below tol.
    """

    def __init__(self, numeric: NumericStructure, tol: float = 1e-12):
        self.numeric = numeric
        self.tol = tol
        self.n = numeric.n
        self.is_translation = numeric.reeb_is_constant
        self._xi = numeric.reeb(np.zeros(self.n)) if self.is_translation else None

    def field(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(points)
        if self.is_translation:
            return np.broadcast_to(self._xi, points.shape).copy()
        return self.numeric.reeb.batch(points)

    def flow(self, points: np.ndarray, times: np.ndarray) -> np.ndarray:
        return self.flow_with_tangent(points, times, tangent=False)[0]

    def flow_with_tangent(
        self, points: np.ndarray, times: np.ndarray, tangent: bool = True
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        Raises:
            FlowExitError: the flow runs into a coefficient pole or blows up
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        times = np.broadcast_to(np.asarray(times, dtype=float), (points.shape[0],))
        count = points.shape[0]
        identity = np.broadcast_to(np.eye(self.n), (count, self.n, self.n)).copy()

        if self.is_translation:
            return points + times[:, None] * self._xi[None, :], identity

        steps = 8
        y_prev, J_prev = self._rk4(points, times, steps, tangent)
        while True:
            steps *= 2
            y, J = self._rk4(points, times, steps, tangent)
            err = np.max(np.abs(y - y_prev)) / 15.0
            if tangent:
                err = max(err, np.max(np.abs(J - J_prev)) / 15.0)
            if err <= self.tol:
                return y, J
            if steps >= MAX_FLOW_STEPS:
                raise ToleranceNotReachedError(
                    "Reeb flow did not reach tolerance", {"steps": steps, "estimate": float(err)}
                )
            y_prev, J_prev = y, J

    def _rhs(self, y: np.ndarray, J: np.ndarray, times: np.ndarray, tangent: bool):
        if not np.all(np.isfinite(y)):
            raise FlowExitError("Reeb flow left the chart")
        try:
            self.numeric.check_poles(y)
        except PoleError as e:
            logger.warning(f"Reeb flow hit a pole: {e.details}")
            raise FlowExitError("Reeb flow runs into a coefficient pole", e.details) from e
        dy = times[:, None] * self.numeric.reeb.batch(y)
        dJ = None
        if tangent:
            jac = self.numeric.reeb_jacobian.batch(y)
            dJ = times[:, None, None] * np.einsum("kij,kjl->kil", jac, J)
        return dy, dJ

    def _rk4(self, points: np.ndarray, times: np.ndarray, steps: int, tangent: bool):
        h = 1.0 / steps
        y = points.copy()
        J = np.broadcast_to(np.eye(self.n), (points.shape[0], self.n, self.n)).copy()
        for _ in range(steps):
            k1, l1 = self._rhs(y, J, times, tangent)
            k2, l2 = self._rhs(y + 0.5 * h * k1, J + 0.5 * h * l1 if tangent else J, times, tangent)
            k3, l3 = self._rhs(y + 0.5 * h * k2, J + 0.5 * h * l2 if tangent else J, times, tangent)
            k4, l4 = self._rhs(y + h * k3, J + h * l3 if tangent else J, times, tangent)
            y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            if tangent:
                J = J + h / 6.0 * (l1 + 2 * l2 + 2 * l3 + l4)
        return y, J
