"""Float evaluators compiled from chart functions with sympy.lambdify."""

from typing import Sequence, Tuple

import numpy as np
import sympy as sp

from src.chart.chart import Chart


def _flatten(nested) -> list:
    if isinstance(nested, (list, tuple)):
        return [leaf for item in nested for leaf in _flatten(item)]
    return [nested]


def _shape_of(nested) -> Tuple[int, ...]:
    if isinstance(nested, (list, tuple)):
        if not nested:
            return (0,)
        return (len(nested),) + _shape_of(nested[0])
    return ()


class LambdifiedArray:
    """
    Нумерическое вычисление вложенного массива функций карты.

    One lambdified function per array; batch() evaluates many points at once
    and broadcasts constant entries.
    """

    def __init__(self, chart: Chart, nested):
        self.shape = _shape_of(nested)
        leaves = _flatten(nested)
        self.size = len(leaves)
        exprs = [chart.to_expr(f) for f in leaves]
        self._fn = sp.lambdify(chart.symbols, exprs, modules="numpy")

    def __call__(self, x: Sequence[float]) -> np.ndarray:
        if self.size == 0:
            return np.zeros(self.shape)
        values = self._fn(*np.asarray(x, dtype=float))
        return np.asarray(values, dtype=float).reshape(self.shape)

    def batch(self, points: np.ndarray) -> np.ndarray:
        """(N, n) points -> (N, *shape)."""
        points = np.asarray(points, dtype=float)
        count = points.shape[0]
        if self.size == 0:
            return np.zeros((count,) + self.shape)
        values = self._fn(*points.T)
        stacked = np.stack([np.broadcast_to(np.asarray(v, dtype=float), (count,)) for v in values], axis=1)
        return stacked.reshape((count,) + self.shape)
