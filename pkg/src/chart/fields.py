"""Vector fields, 1-forms, frame metrics and their exact calculus."""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Sequence, Tuple

from loguru import logger

from src.chart.chart import Chart, ChartFunction, PointLike
from src.chart.matrices import (
    DMNonInvertibleMatrixError,
    FunctionMatrix,
    fmat_inv,
    fmat_matvec,
    fmat_transpose,
)
from src.errors import DimensionMismatchError, MetricDegeneracyError

TwoFormOnPairs = Callable[["VectorField", "VectorField"], ChartFunction]


def _check_length(chart: Chart, components: Sequence) -> tuple:
    components = tuple(components)
    if len(components) != chart.n:
        raise DimensionMismatchError(
            "wrong number of components", {"expected": chart.n, "got": len(components)}
        )
    return components


@dataclass(frozen=True, eq=False)
class VectorField:
    """X = sum_i X^i d_i in the coordinate frame."""

    chart: Chart
    components: Tuple[ChartFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", _check_length(self.chart, self.components))

    @classmethod
    def coordinate(cls, chart: Chart, name: str) -> "VectorField":
        idx = chart.index(name)
        return cls(chart, tuple(chart.one if i == idx else chart.zero for i in range(chart.n)))

    @classmethod
    def parse(cls, chart: Chart, texts: Sequence[str]) -> "VectorField":
        return cls(chart, tuple(chart.parse(t) for t in texts))

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, tuple(chart.zero for _ in range(chart.n)))

    def emit(self) -> List[str]:
        return [self.chart.emit(c) for c in self.components]

    def apply(self, f: ChartFunction) -> ChartFunction:
        """Directional derivative X(f)."""
        result = self.chart.zero
        for comp, gen in zip(self.components, self.chart.gens):
            if comp:
                result += comp * f.diff(gen)
        return result

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.chart, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.chart, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "VectorField":
        return VectorField(self.chart, tuple(-a for a in self.components))

    def scale(self, f: ChartFunction) -> "VectorField":
        return VectorField(self.chart, tuple(f * a for a in self.components))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorField)
            and other.chart == self.chart
            and all(not (a - b) for a, b in zip(self.components, other.components))
        )

    def __hash__(self) -> int:
        return hash((self.chart, tuple(str(c) for c in self.components)))

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    def at(self, point: PointLike) -> list:
        return [self.chart.evaluate(c, point) for c in self.components]


@dataclass(frozen=True, eq=False)
class OneForm:
    """theta = sum_i theta_i dx^i."""

    chart: Chart
    components: Tuple[ChartFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", _check_length(self.chart, self.components))

    @classmethod
    def parse(cls, chart: Chart, texts: Sequence[str]) -> "OneForm":
        return cls(chart, tuple(chart.parse(t) for t in texts))

    def emit(self) -> List[str]:
        return [self.chart.emit(c) for c in self.components]

    def __call__(self, X: VectorField) -> ChartFunction:
        result = self.chart.zero
        for a, b in zip(self.components, X.components):
            if a and b:
                result += a * b
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OneForm)
            and other.chart == self.chart
            and all(not (a - b) for a, b in zip(self.components, other.components))
        )

    def __hash__(self) -> int:
        return hash((self.chart, tuple(str(c) for c in self.components)))


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X,Y]^k = sum_j (X^j d_j Y^k - Y^j d_j X^k)."""
    if X.chart != Y.chart:
        raise DimensionMismatchError("vector fields live on different charts")
    return VectorField(
        X.chart,
        tuple(X.apply(yk) - Y.apply(xk) for xk, yk in zip(X.components, Y.components)),
    )


def exterior_derivative(theta: OneForm) -> TwoFormOnPairs:
    """d theta(X, Y) = X theta(Y) - Y theta(X) - theta([X, Y])."""

    def dtheta(X: VectorField, Y: VectorField) -> ChartFunction:
        return X.apply(theta(Y)) - Y.apply(theta(X)) - theta(vf_bracket(X, Y))

    return dtheta


class Coframe:
    """
    Разложение векторных полей по базису (E_1, ..., E_2m, T).

    T is a field transversal to the frame (the Reeb field in practice); the
    inverse of P = [E_1 | ... | E_2m | T] is computed once over Q(x).
    """

    def __init__(self, frame: Sequence[VectorField], transversal: VectorField):
        self.frame = tuple(frame)
        self.transversal = transversal
        self.chart = transversal.chart
        if len(self.frame) + 1 != self.chart.n:
            raise DimensionMismatchError(
                "frame plus transversal must have n fields",
                {"n": self.chart.n, "frame": len(self.frame)},
            )

    @cached_property
    def basis_matrix(self) -> FunctionMatrix:
        """Columns are E_1, ..., E_2m, T in coordinates."""
        return fmat_transpose([list(E.components) for E in self.frame] + [list(self.transversal.components)])

    @cached_property
    def inverse(self) -> FunctionMatrix:
        try:
            return fmat_inv(self.chart, self.basis_matrix)
        except (DMNonInvertibleMatrixError, ZeroDivisionError) as e:
            raise MetricDegeneracyError("frame and transversal field are not a basis") from e

    def components(self, Z: VectorField) -> List[ChartFunction]:
        """All n coefficients; the last one is the transversal coefficient."""
        return fmat_matvec(self.inverse, list(Z.components))

    def frame_components(self, Z: VectorField) -> List[ChartFunction]:
        return self.components(Z)[:-1]

    def combine(self, coeffs: Sequence[ChartFunction]) -> VectorField:
        """sum_a coeffs[a] E_a (+ coeffs[-1] T when n coefficients are given)."""
        fields = list(self.frame) + ([self.transversal] if len(coeffs) == self.chart.n else [])
        result = VectorField.zero(self.chart)
        for c, E in zip(coeffs, fields):
            if c:
                result = result + E.scale(c)
        return result


@dataclass(frozen=True, eq=False)
class FrameMetric:
    """g on D: frame E_1..E_2m and gram[a][b] = g(E_a, E_b)."""

    frame: Tuple[VectorField, ...]
    gram: Tuple[Tuple[ChartFunction, ...], ...]

    def __post_init__(self):
        frame = tuple(self.frame)
        gram = tuple(tuple(row) for row in self.gram)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "gram", gram)
        rank = len(frame)
        if len(gram) != rank or any(len(row) != rank for row in gram):
            raise DimensionMismatchError("gram shape does not match frame", {"frame": rank})
        for a in range(rank):
            for b in range(a + 1, rank):
                if gram[a][b] - gram[b][a]:
                    raise MetricDegeneracyError("gram matrix is not symmetric", {"entry": [a, b]})

    @property
    def rank(self) -> int:
        return len(self.frame)

    @property
    def chart(self) -> Chart:
        return self.frame[0].chart

    def gram_matrix(self) -> FunctionMatrix:
        return [list(row) for row in self.gram]

    def gram_at(self, point: PointLike):
        return self.chart.evaluate_matrix(self.gram, point)


def lie_derivative_metric(xi: VectorField, metric: FrameMetric, coframe: Coframe = None) -> FunctionMatrix:
    """
    (L_xi g)(E_a, E_b) in frame components.

    xi(g_ab) - g(pi[xi, E_a], E_b) - g(E_a, pi[xi, E_b]), with pi the projection
    along xi given by the coframe.
    """
    coframe = coframe or Coframe(metric.frame, xi)
    g = metric.gram
    rank = metric.rank
    L = [coframe.frame_components(vf_bracket(xi, E)) for E in metric.frame]
    result = []
    for a in range(rank):
        row = []
        for b in range(rank):
            value = xi.apply(g[a][b])
            for d in range(rank):
                if L[a][d]:
                    value -= L[a][d] * g[d][b]
                if L[b][d]:
                    value -= L[b][d] * g[a][d]
            row.append(value)
        result.append(row)
    logger.debug(f"L_xi g computed on a frame of rank {rank}")
    return result
