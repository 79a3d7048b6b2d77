"""Float evaluators of a contact structure and of its connections."""

from typing import Optional

import numpy as np
from loguru import logger

from src.chart.numeric import LambdifiedArray
from src.errors import PoleError

# |denominator| below this at a sample point counts as a pole
POLE_THRESHOLD = 1e-12


def is_constant(f) -> bool:
    return f.numer.is_ground and f.denom.is_ground


class NumericStructure:
    """
    Лямбдифицированные данные структуры для ODE и выборок по кривым.

    All arrays are in coordinates except gram/omega, which are frame matrices.
    """

    def __init__(self, structure):
        S = structure
        chart = S.chart
        self.structure = S
        self.n = S.n
        self.rank = S.rank

        self.theta = LambdifiedArray(chart, list(S.theta.components))
        self.reeb = LambdifiedArray(chart, list(S.reeb.components))
        self.coframe_inverse = LambdifiedArray(chart, S.coframe.inverse)
        self.frame = LambdifiedArray(chart, [list(E.components) for E in S.frame])
        self.gram = LambdifiedArray(chart, S.metric.gram_matrix())
        self.omega = LambdifiedArray(chart, S.dtheta_frame)
        theta = S.theta.components
        gens = chart.gens
        self.dtheta_coords = LambdifiedArray(
            chart,
            [[theta[j].diff(gens[i]) - theta[i].diff(gens[j]) for j in range(self.n)] for i in range(self.n)],
        )

        self.reeb_is_constant = all(is_constant(c) for c in S.reeb.components)
        self.reeb_jacobian: Optional[LambdifiedArray] = None
        if not self.reeb_is_constant:
            jac = [[c.diff(g) for g in chart.gens] for c in S.reeb.components]
            self.reeb_jacobian = LambdifiedArray(chart, jac)

        leaves = list(S.theta.components) + list(S.reeb.components)
        leaves += [f for row in S.coframe.inverse for f in row]
        leaves += [f for row in S.metric.gram for f in row]
        for E in S.frame:
            leaves += list(E.components)
        dens = chart.denominators(leaves)
        self._denominators = LambdifiedArray(chart, dens) if dens else None
        logger.debug(f"numeric evaluators for '{S.name}' ready ({len(dens)} denominators)")

    def check_poles(self, points: np.ndarray) -> None:
        """
        Raises:
            PoleError: some coefficient denominator (numerically) vanishes at a sample
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self._denominators is None:
            return
        values = self._denominators.batch(points)
        bad = ~np.isfinite(values) | (np.abs(values) < POLE_THRESHOLD)
        if np.any(bad):
            idx = int(np.argwhere(bad.any(axis=1))[0][0])
            raise PoleError("coefficient pole on curve", {"point": points[idx].tolist()})

    def frame_split(self, x: np.ndarray, velocity: np.ndarray) -> np.ndarray:
        """(w^1..w^2m, theta(velocity)) with velocity = sum w^a E_a + theta(velocity) xi."""
        return self.coframe_inverse(x) @ velocity

    def frame_split_batch(self, points: np.ndarray, velocities: np.ndarray) -> np.ndarray:
        inv = self.coframe_inverse.batch(points)
        return np.einsum("kij,kj->ki", inv, velocities)

    def theta_of(self, points: np.ndarray, velocities: np.ndarray) -> np.ndarray:
        values = self.theta.batch(points)
        return np.einsum("ki,ki->k", values, velocities)

    def gram_at(self, x) -> np.ndarray:
        return self.gram(x)

    def omega_at(self, x) -> np.ndarray:
        return self.omega(x)


class NumericConnection:
    """Gamma_a (rank^3) and Gamma_xi (rank^2) as float evaluators."""

    def __init__(self, conn):
        chart = conn.structure.chart
        self.connection = conn
        self.rank = conn.structure.rank
        self.horizontal = LambdifiedArray(chart, [list(map(list, g)) for g in conn.horizontal])
        self.reeb = None if conn.reeb is None else LambdifiedArray(chart, [list(r) for r in conn.reeb])

    @property
    def is_extended(self) -> bool:
        return self.reeb is not None

    def generators_batch(self, points: np.ndarray, splits: np.ndarray) -> np.ndarray:
        """
        A(t) = sum_a w^a Gamma_a + theta(dot gamma) Gamma_xi at every sample.

        splits: (N, n) rows (w, theta(dot gamma)) from NumericStructure.frame_split_batch.
        """
        gammas = self.horizontal.batch(points)  # (N, a, d, b)
        A = np.einsum("ka,kadb->kdb", splits[:, : self.rank], gammas)
        if self.reeb is not None:
            A = A + splits[:, self.rank][:, None, None] * self.reeb.batch(points)
        return A
