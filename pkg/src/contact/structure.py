"""
Contact sub-pseudo-Riemannian structures on a chart.

A structure is validated once at construction; every derived object (Reeb
field, coframe, structure functions of the frame) is computed lazily and cached.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Tuple

import numpy as np
from loguru import logger

from src.chart.chart import Chart, ChartFunction, PointLike
from src.chart.fields import Coframe, FrameMetric, OneForm, VectorField, exterior_derivative, vf_bracket
from src.chart.matrices import (
    DMNonInvertibleMatrixError,
    FunctionMatrix,
    fmat_inv,
    fmat_transpose,
    from_domain_matrix,
    to_domain_matrix,
)
from src.errors import MetricDegeneracyError, NotContactError, PreconditionError


@dataclass(frozen=True)
class FrameStructure:
    """
    Структурные функции репера.

    brackets[a][b]: frame components of pi[E_a, E_b]
    vertical[a][b]: theta([E_a, E_b])
    reeb_brackets[c]: frame components of pi[xi, E_c]
    """

    brackets: tuple
    vertical: tuple
    reeb_brackets: tuple

    @property
    def reeb_matrix(self) -> FunctionMatrix:
        """L[e][c] = component e of pi[xi, E_c]."""
        return fmat_transpose([list(col) for col in self.reeb_brackets])


class ContactStructure:
    """
    Контактное суб-псевдориманово многообразие (M, theta, g) в одной карте.

    Raises on construction:
        PreconditionError: n < 5, n even, frame size wrong or frame not horizontal
        NotContactError: d theta degenerate on D at the basepoint
        MetricDegeneracyError: gram degenerate at the basepoint
    """

    def __init__(
        self,
        chart: Chart,
        theta: OneForm,
        metric: FrameMetric,
        basepoint: PointLike,
        name: str = "structure",
    ):
        n = chart.n
        if n < 5 or n % 2 == 0:
            raise PreconditionError("chart dimension must be odd and at least 5", {"n": n})
        if metric.rank != n - 1:
            raise PreconditionError("frame must have n - 1 fields", {"n": n, "frame": metric.rank})
        if theta.chart != chart or metric.chart != chart:
            raise PreconditionError("theta and frame must live on the structure's chart")

        for a, E in enumerate(metric.frame):
            if theta(E):
                logger.error(f"frame field {a} is not horizontal")
                raise PreconditionError(
                    "frame field is not tangent to ker theta",
                    {"index": a, "theta(E)": chart.emit(theta(E))},
                )

        self.chart = chart
        self.theta = theta
        self.metric = metric
        self.name = name
        self.basepoint = chart.point(basepoint)
        self.n = n
        self.m = (n - 1) // 2

        omega0 = chart.evaluate_matrix(self.dtheta_frame, self.basepoint)
        if omega0.det() == 0:
            logger.error(f"{name}: d theta degenerate on D at the basepoint")
            raise NotContactError("d theta restricted to D is degenerate at the basepoint")
        if metric.gram_at(self.basepoint).det() == 0:
            raise MetricDegeneracyError("gram matrix is degenerate at the basepoint")

        logger.info(f"✓ Contact structure '{name}' validated (n={n}, m={self.m})")

    # ========================================================================
    # BASIC DATA
    # ========================================================================

    @property
    def frame(self) -> Tuple[VectorField, ...]:
        return self.metric.frame

    @property
    def rank(self) -> int:
        return 2 * self.m

    @cached_property
    def dtheta(self) -> Callable[[VectorField, VectorField], ChartFunction]:
        return exterior_derivative(self.theta)

    @cached_property
    def dtheta_frame(self) -> FunctionMatrix:
        """Omega[a][b] = d theta(E_a, E_b)."""
        frame = self.frame
        rows = [[self.chart.zero] * len(frame) for _ in frame]
        for a in range(len(frame)):
            for b in range(a + 1, len(frame)):
                value = self.dtheta(frame[a], frame[b])
                rows[a][b] = value
                rows[b][a] = -value
        return rows

    @cached_property
    def reeb(self) -> VectorField:
        return reeb_field(self)

    @cached_property
    def coframe(self) -> Coframe:
        return Coframe(self.frame, self.reeb)

    @cached_property
    def gram_inverse(self) -> FunctionMatrix:
        try:
            return fmat_inv(self.chart, self.metric.gram_matrix())
        except (DMNonInvertibleMatrixError, ZeroDivisionError) as e:
            raise MetricDegeneracyError("gram matrix is not invertible over rational functions") from e

    @cached_property
    def structure_functions(self) -> FrameStructure:
        frame = self.frame
        rank = len(frame)
        zero_vec = [self.chart.zero] * rank
        brackets = [[list(zero_vec) for _ in range(rank)] for _ in range(rank)]
        vertical = [[self.chart.zero] * rank for _ in range(rank)]
        for a in range(rank):
            for b in range(a + 1, rank):
                comps = self.coframe.components(vf_bracket(frame[a], frame[b]))
                brackets[a][b] = comps[:-1]
                brackets[b][a] = [-c for c in comps[:-1]]
                vertical[a][b] = comps[-1]
                vertical[b][a] = -comps[-1]
        reeb_brackets = [self.coframe.frame_components(vf_bracket(self.reeb, E)) for E in frame]
        return FrameStructure(
            brackets=tuple(tuple(tuple(v) for v in row) for row in brackets),
            vertical=tuple(tuple(row) for row in vertical),
            reeb_brackets=tuple(tuple(v) for v in reeb_brackets),
        )

    @cached_property
    def numeric(self):
        from src.contact.numeric import NumericStructure

        return NumericStructure(self)

    def project(self, Z: VectorField) -> Tuple[List[ChartFunction], ChartFunction]:
        """(pi Z frame components, pi'(Z) = theta(Z))."""
        comps = self.coframe.components(Z)
        return comps[:-1], comps[-1]

    def basepoint_floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.basepoint])

    def is_lorentzian(self) -> bool:
        eigs = np.linalg.eigvalsh(np.array(self.metric.gram_at(self.basepoint).tolist(), dtype=float))
        return int(np.sum(eigs < 0)) == 1

    def signature(self) -> Tuple[int, int]:
        eigs = np.linalg.eigvalsh(np.array(self.metric.gram_at(self.basepoint).tolist(), dtype=float))
        return int(np.sum(eigs > 0)), int(np.sum(eigs < 0))


def reeb_field(S: ContactStructure) -> VectorField:
    """
    Unique xi with theta(xi) = 1 and d theta(xi, E_a) = 0 for every frame field.

    Solved exactly over Q(x) and verified by back-substitution on coordinate fields.

    Raises:
        NotContactError: the linear system is singular
    """
    chart = S.chart
    n = chart.n
    theta = S.theta.components
    gens = chart.gens
    # coordinate matrix of d theta: (d theta)_{ij} = d_i theta_j - d_j theta_i
    dtheta = [[theta[j].diff(gens[i]) - theta[i].diff(gens[j]) for j in range(n)] for i in range(n)]

    rows = [list(theta)]
    for E in S.frame:
        rows.append([sum((dtheta[i][j] * E.components[j] for j in range(n)), start=chart.zero) for i in range(n)])

    system = to_domain_matrix(chart, rows)
    if not system.det():
        logger.error(f"{S.name}: Reeb system is singular")
        raise NotContactError("d theta is degenerate on D; no Reeb field")
    rhs = [[chart.one]] + [[chart.zero] for _ in S.frame]
    solution = system.lu_solve(to_domain_matrix(chart, rhs))

    xi = VectorField(chart, tuple(row[0] for row in from_domain_matrix(solution)))

    if S.theta(xi) != chart.one:
        raise NotContactError("back-substitution failed: theta(xi) != 1")
    for name in chart.coords:
        if S.dtheta(xi, VectorField.coordinate(chart, name)):
            raise NotContactError("back-substitution failed: d theta(xi, .) != 0", {"coordinate": name})

    logger.info(f"✓ Reeb field of '{S.name}': {xi.emit()}")
    return xi


def projections(S: ContactStructure) -> Callable[[VectorField], Tuple[List[ChartFunction], ChartFunction]]:
    """Z -> (pi Z, pi'(Z)) with Z = pi'(Z) xi + sum (pi Z)^a E_a."""
    return S.project
