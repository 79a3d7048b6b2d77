"""Scalar products, bivectors and matrix Lie algebras."""

from src.algebra.ideals import Codim1Family, codim, codim1_ideals_oracle, derived_algebra, is_ideal
from src.algebra.lie_span import LieAlgebraSpan, bracket, lie_closure, span_basis, sum_spans
from src.algebra.matrix_functions import matrix_exp, matrix_log
from src.algebra.scalar_product import (
    Bivector,
    ScalarProductSpace,
    bivector_to_endo,
    endo_to_bivector,
    pair_form_bivector,
)

__all__ = [
    "Bivector",
    "Codim1Family",
    "LieAlgebraSpan",
    "ScalarProductSpace",
    "bivector_to_endo",
    "bracket",
    "codim",
    "codim1_ideals_oracle",
    "derived_algebra",
    "endo_to_bivector",
    "is_ideal",
    "lie_closure",
    "matrix_exp",
    "matrix_log",
    "pair_form_bivector",
    "span_basis",
    "sum_spans",
]
