"""Exact calculus on a single coordinate chart."""

from src.chart.chart import Chart, ChartFunction, to_rational
from src.chart.fields import (
    Coframe,
    FrameMetric,
    OneForm,
    VectorField,
    exterior_derivative,
    lie_derivative_metric,
    vf_bracket,
)
from src.chart.numeric import LambdifiedArray

__all__ = [
    "Chart",
    "ChartFunction",
    "Coframe",
    "FrameMetric",
    "LambdifiedArray",
    "OneForm",
    "VectorField",
    "exterior_derivative",
    "lie_derivative_metric",
    "to_rational",
    "vf_bracket",
]
