"""
Single global coordinate chart with exact rational-function coefficients.

Chart functions are elements of the field Q(x_1, ..., x_n) (sympy FracField):
numerator and denominator are kept reduced, so equality is canonical.
"""

import re
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple, Union

import numpy as np
import sympy as sp
from loguru import logger
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    rationalize,
    standard_transformations,
)
from sympy.polys.polyerrors import CoercionFailed

from src.errors import DimensionMismatchError, ExpressionError, PoleError

# FracElement of the chart's field.
ChartFunction = Any
PointLike = Sequence[Union[int, str, Fraction, sp.Rational]]

_COORD_NAME = re.compile(r"^(v|u|t|x[1-9][0-9]*)$")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_ALLOWED_TEXT = re.compile(r"^[0-9A-Za-z_+\-*/^().\s]*$")
_TRANSFORMATIONS = standard_transformations + (convert_xor, rationalize)


def to_rational(value) -> sp.Rational:
    """Exact rational from int, Fraction, sympy Rational or a literal like '3/2'."""
    if isinstance(value, (float, np.floating)):
        return sp.Rational(repr(float(value)))
    if isinstance(value, np.integer):
        value = int(value)
    try:
        result = sp.Rational(value)
    except (TypeError, ValueError) as e:
        raise ExpressionError(f"not a rational literal: {value!r}") from e
    return result


class Chart:
    """
    Координатная карта: имена координат, символы sympy и поле рациональных функций.

    Identifiers follow the manifest grammar: v, u, t, x1..xN.
    """

    def __init__(self, coords: Iterable[str]):
        coords = tuple(coords)
        if len(set(coords)) != len(coords):
            raise ExpressionError("duplicate coordinate names", {"coords": list(coords)})
        bad = [c for c in coords if not _COORD_NAME.match(c)]
        if bad:
            raise ExpressionError("coordinate names must be v, u, t or x<N>", {"invalid": bad})

        self.coords: Tuple[str, ...] = coords
        self.symbols: Tuple[sp.Symbol, ...] = tuple(sp.Symbol(c) for c in coords)
        self.domain = sp.QQ.frac_field(*self.symbols)
        self.field = self.domain.field
        self.gens: Tuple[ChartFunction, ...] = tuple(self.field.gens)

    def __eq__(self, other) -> bool:
        return isinstance(other, Chart) and other.coords == self.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"Chart({', '.join(self.coords)})"

    @property
    def n(self) -> int:
        return len(self.coords)

    def index(self, name: str) -> int:
        try:
            return self.coords.index(name)
        except ValueError as e:
            raise ExpressionError(f"unknown coordinate {name!r}") from e

    def gen(self, name: str) -> ChartFunction:
        return self.gens[self.index(name)]

    # ========================================================================
    # CONSTANTS
    # ========================================================================

    @property
    def zero(self) -> ChartFunction:
        return self.field.zero

    @property
    def one(self) -> ChartFunction:
        return self.field.one

    def const(self, value) -> ChartFunction:
        return self.field.from_expr(to_rational(value))

    def from_expr(self, expr: sp.Expr) -> ChartFunction:
        """sympy expression in the chart symbols -> chart function."""
        try:
            return self.field.from_expr(sp.sympify(expr))
        except (ValueError, CoercionFailed, ZeroDivisionError) as e:
            raise ExpressionError(f"not a rational function of {', '.join(self.coords)}: {expr}") from e

    # ========================================================================
    # TEXT GRAMMAR
    # ========================================================================

    def parse(self, text: str) -> ChartFunction:
        """
        Разбор выражения: + - * / ^, скобки, целые степени, рациональные литералы.

        Raises:
            ExpressionError: unknown identifier, non-integer exponent or malformed text
        """
        if not isinstance(text, str) or not text.strip():
            raise ExpressionError("empty expression")
        if not _ALLOWED_TEXT.match(text):
            raise ExpressionError(f"illegal characters in expression {text!r}")
        unknown = sorted({name for name in _IDENTIFIER.findall(text) if name not in self.coords})
        if unknown:
            raise ExpressionError(f"unknown identifiers in {text!r}", {"identifiers": unknown})

        local = dict(zip(self.coords, self.symbols))
        try:
            expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS)
        except Exception as e:  # tokenizer and eval errors come in many types
            raise ExpressionError(f"cannot parse {text!r}: {e}") from e

        for power in expr.atoms(sp.Pow):
            if not power.exp.is_Integer:
                raise ExpressionError(f"non-integer exponent in {text!r}")
        return self.from_expr(expr)

    def emit(self, f: ChartFunction) -> str:
        """Canonical text of f; parse(emit(f)) == f and emit is stable under that round trip."""
        return sp.sstr(self.to_expr(f), order="lex").replace("**", "^")

    def to_expr(self, f: ChartFunction) -> sp.Expr:
        return f.as_expr(*self.symbols)

    # ========================================================================
    # EVALUATION
    # ========================================================================

    def point(self, values: PointLike) -> Tuple[sp.Rational, ...]:
        if len(values) != self.n:
            raise DimensionMismatchError("point has wrong dimension", {"expected": self.n, "got": len(values)})
        return tuple(to_rational(v) for v in values)

    def evaluate(self, f: ChartFunction, point: PointLike) -> sp.Rational:
        """
        Exact value of f at a rational point.

        Raises:
            PoleError: denominator vanishes at the point
        """
        qq = self.field.domain
        values = [qq.convert(v) for v in self.point(point)]
        denom = f.denom(*values)
        if not denom:
            logger.debug(f"pole of {self.emit(f)} at {list(point)}")
            raise PoleError(f"denominator of {self.emit(f)} vanishes", {"point": [str(v) for v in point]})
        return qq.to_sympy(f.numer(*values) / denom)

    def evaluate_matrix(self, rows: Sequence[Sequence[ChartFunction]], point: PointLike) -> sp.Matrix:
        return sp.Matrix([[self.evaluate(f, point) for f in row] for row in rows])

    def evaluate_float(self, f: ChartFunction, point: Sequence[float]) -> float:
        subs = dict(zip(self.symbols, point))
        return float(self.to_expr(f).evalf(subs=subs))

    def denominators(self, functions: Iterable[ChartFunction]) -> List[ChartFunction]:
        """Distinct non-constant denominators, as chart functions."""
        seen = []
        for f in functions:
            den = self.field.from_expr(f.denom.as_expr(*self.symbols))
            if den.numer.is_ground:
                continue
            if not any(den == d for d in seen):
                seen.append(den)
        return seen
