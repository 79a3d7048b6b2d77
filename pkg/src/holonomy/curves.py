"""
Piecewise curves in the chart.

Every segment is parametrised by s in [0, 1]; a ChartCurve is a list of
segments joined continuously. Polynomial segments keep exact rational
coefficients, the others are evaluated numerically.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
import sympy as sp
from numpy.polynomial import polynomial as P

from src.chart.chart import to_rational
from src.errors import DimensionMismatchError, PreconditionError
from src.holonomy.reeb_flow import ReebFlow

JOIN_TOL = 1e-9

# Gauss-Legendre nodes on [-1, 1] for the theta integrals
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


class Segment(ABC):
    """Отрезок кривой: s in [0, 1] -> точки карты."""

    @abstractmethod
    def position(self, s: np.ndarray) -> np.ndarray:
        """(N,) parameters -> (N, n) points."""

    @abstractmethod
    def velocity(self, s: np.ndarray) -> np.ndarray:
        """(N,) parameters -> (N, n) tangent vectors."""

    def start(self) -> np.ndarray:
        return self.position(np.array([0.0]))[0]

    def end(self) -> np.ndarray:
        return self.position(np.array([1.0]))[0]

    def reversed(self) -> "Segment":
        return ReversedSegment(self)


@dataclass(frozen=True)
class PolynomialSegment(Segment):
    """coefficients[i][k]: coefficient of s^k in coordinate i (exact rationals)."""

    coefficients: Tuple[Tuple[sp.Rational, ...], ...]

    def __post_init__(self):
        coeffs = tuple(tuple(to_rational(c) for c in row) or (sp.Integer(0),) for row in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "_floats", [np.array([float(c) for c in row]) for row in coeffs])

    @classmethod
    def line(cls, start: Sequence, end: Sequence) -> "PolynomialSegment":
        if len(start) != len(end):
            raise DimensionMismatchError("line endpoints have different dimensions")
        return cls(tuple((to_rational(a), to_rational(b) - to_rational(a)) for a, b in zip(start, end)))

    @classmethod
    def from_exprs(cls, exprs: Sequence[sp.Expr], s: sp.Symbol) -> "PolynomialSegment":
        rows = []
        for e in exprs:
            coeffs = sp.Poly(sp.expand(e), s).all_coeffs()[::-1]
            rows.append(tuple(sp.Rational(c) for c in coeffs))
        return cls(tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def exprs(self, s: sp.Symbol) -> List[sp.Expr]:
        return [sum((c * s ** k for k, c in enumerate(row)), sp.Integer(0)) for row in self.coefficients]

    def position(self, s: np.ndarray) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return np.stack([P.polyval(s, c) for c in self._floats], axis=1)

    def velocity(self, s: np.ndarray) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return np.stack([P.polyval(s, P.polyder(c)) if c.size > 1 else np.zeros_like(s) for c in self._floats], axis=1)


@dataclass(frozen=True)
class ReversedSegment(Segment):
    base: Segment

    def position(self, s: np.ndarray) -> np.ndarray:
        return self.base.position(1.0 - np.atleast_1d(np.asarray(s, dtype=float)))

    def velocity(self, s: np.ndarray) -> np.ndarray:
        return -self.base.velocity(1.0 - np.atleast_1d(np.asarray(s, dtype=float)))

    def reversed(self) -> Segment:
        return self.base


@dataclass(frozen=True, eq=False)
class ReebSegment(Segment):
    """lambda(s) = phi_{s * duration}(origin)."""

    flow: ReebFlow
    origin: np.ndarray
    duration: float

    def position(self, s: np.ndarray) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        points = np.broadcast_to(np.asarray(self.origin, dtype=float), (s.size, len(self.origin)))
        return self.flow.flow(points, s * self.duration)

    def velocity(self, s: np.ndarray) -> np.ndarray:
        return self.duration * self.flow.field(self.position(s))


@dataclass(frozen=True, eq=False)
class HorizontalizedSegment(Segment):
    """
    s -> phi_{f(s)}(mu(s)), f(s) = offset - int_0^s theta(mu'(r)) dr.

    L_xi theta = 0, so theta of the result vanishes identically.
    """

    base: Segment
    flow: ReebFlow
    offset: float = 0.0
    _cache: dict = field(default_factory=dict, repr=False)

    def theta_rate(self, s: np.ndarray) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return self.flow.numeric.theta_of(self.base.position(s), self.base.velocity(s))

    def shift(self, s: np.ndarray) -> np.ndarray:
        """f(s) by Gauss-Legendre quadrature on [0, s]."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        nodes = 0.5 * (s[:, None] * (_GL_NODES[None, :] + 1.0))
        rates = self.theta_rate(nodes.reshape(-1)).reshape(nodes.shape)
        return self.offset - 0.5 * s * (rates @ _GL_WEIGHTS)

    @property
    def end_offset(self) -> float:
        if "end" not in self._cache:
            self._cache["end"] = float(self.shift(np.array([1.0]))[0])
        return self._cache["end"]

    def position(self, s: np.ndarray) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return self.flow.flow(self.base.position(s), self.shift(s))

    def velocity(self, s: np.ndarray) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        points, tangent = self.flow.flow_with_tangent(self.base.position(s), self.shift(s))
        moved = np.einsum("kij,kj->ki", tangent, self.base.velocity(s))
        return moved - self.theta_rate(s)[:, None] * self.flow.field(points)


@dataclass(frozen=True, eq=False)
class ChartCurve:
    """
    Кусочная кривая: последовательность отрезков, непрерывная в точках склейки.

    Raises:
        PreconditionError: consecutive segments do not join
    """

    segments: Tuple[Segment, ...]

    def __post_init__(self):
        segments = tuple(self.segments)
        object.__setattr__(self, "segments", segments)
        if not segments:
            raise PreconditionError("a curve needs at least one segment")
        for i in range(len(segments) - 1):
            gap = float(np.max(np.abs(segments[i].end() - segments[i + 1].start())))
            if gap > JOIN_TOL:
                raise PreconditionError("curve is not continuous", {"join": i, "gap": gap})

    @classmethod
    def polygon(cls, points: Sequence[Sequence]) -> "ChartCurve":
        """Straight segments through exact points."""
        return cls(tuple(PolynomialSegment.line(a, b) for a, b in zip(points[:-1], points[1:])))

    def __len__(self) -> int:
        return len(self.segments)

    def start(self) -> np.ndarray:
        return self.segments[0].start()

    def end(self) -> np.ndarray:
        return self.segments[-1].end()

    def then(self, other: "ChartCurve") -> "ChartCurve":
        """This curve followed by other."""
        return ChartCurve(self.segments + other.segments)

    def reversed(self) -> "ChartCurve":
        return ChartCurve(tuple(seg.reversed() for seg in reversed(self.segments)))

    def closing_gap(self) -> float:
        return float(np.max(np.abs(self.end() - self.start())))

    def is_closed(self, tol: float = JOIN_TOL) -> bool:
        return self.closing_gap() <= tol

    def samples(self, per_segment: int) -> Tuple[np.ndarray, np.ndarray]:
        """Points and velocities at per_segment equispaced parameters of every segment."""
        s = np.linspace(0.0, 1.0, per_segment)
        points = np.concatenate([seg.position(s) for seg in self.segments])
        velocities = np.concatenate([seg.velocity(s) for seg in self.segments])
        return points, velocities


def theta_circulation(numeric, curve: ChartCurve) -> float:
    """int_curve theta by Gauss-Legendre quadrature on each segment."""
    s = 0.5 * (_GL_NODES + 1.0)
    total = 0.0
    for seg in curve.segments:
        rates = numeric.theta_of(seg.position(s), seg.velocity(s))
        total += 0.5 * float(rates @ _GL_WEIGHTS)
    return total


def coordinate_rectangle(x: Sequence, i: int, j: int, a, b) -> ChartCurve:
    """x -> x + a e_i -> x + a e_i + b e_j -> x + b e_j -> x."""
    x = [to_rational(v) for v in x]
    a, b = to_rational(a), to_rational(b)

    def shifted(da, db):
        p = list(x)
        p[i] += da
        p[j] += db
        return p

    return ChartCurve.polygon([x, shifted(a, 0), shifted(a, b), shifted(0, b), x])
