"""Horizontal lifts of curves along the Reeb flow."""

from typing import Optional, Tuple

import numpy as np
import sympy as sp
from loguru import logger

from src.chart.chart import to_rational
from src.config.settings import Settings, get_settings
from src.contact.numeric import NumericStructure
from src.contact.structure import ContactStructure
from src.errors import ToleranceNotReachedError
from src.holonomy.curves import (
    ChartCurve,
    HorizontalizedSegment,
    PolynomialSegment,
    ReebSegment,
    Segment,
)
from src.holonomy.reeb_flow import ReebFlow

_S = sp.Symbol("s")


def horizontality_defect(numeric: NumericStructure, curve: ChartCurve, per_segment: int) -> float:
    """max |theta(gamma')| over per_segment samples of every segment."""
    points, velocities = curve.samples(per_segment)
    return float(np.max(np.abs(numeric.theta_of(points, velocities))))


def _exact_lift(S: ContactStructure, seg: PolynomialSegment, offset) -> Optional[Tuple[PolynomialSegment, sp.Expr]]:
    """Exact lift when xi is constant and theta(mu') is a polynomial in s."""
    chart = S.chart
    exprs = seg.exprs(_S)
    subs = dict(zip(chart.symbols, exprs))
    integrand = sum(
        (chart.to_expr(c).subs(subs) * sp.diff(e, _S) for c, e in zip(S.theta.components, exprs)),
        sp.Integer(0),
    )
    integrand = sp.cancel(sp.expand(integrand))
    if not integrand.is_polynomial(_S):
        return None
    antiderivative = sp.integrate(integrand, _S)
    f = offset - (antiderivative - antiderivative.subs(_S, 0))
    xi = [chart.to_expr(c) for c in S.reeb.components]
    lifted = PolynomialSegment.from_exprs([e + f * x for e, x in zip(exprs, xi)], _S)
    return lifted, sp.expand(f.subs(_S, 1))


def reeb_segment(S: ContactStructure, flow: ReebFlow, origin, duration) -> Segment:
    """phi_{s * duration}(origin); an exact straight segment when xi is constant."""
    if flow.is_translation:
        origin_q = [to_rational(v) for v in origin]
        duration_q = to_rational(duration)
        xi = [S.chart.to_expr(c) for c in S.reeb.components]
        return PolynomialSegment.line(origin_q, [o + duration_q * x for o, x in zip(origin_q, xi)])
    return ReebSegment(flow, np.asarray(origin, dtype=float), float(duration))


def horizontal_lift(
    S: ContactStructure,
    mu: ChartCurve,
    tol: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> Tuple[ChartCurve, float]:
    """
    mu~(s) = phi_{f(s)} mu(s) with f(s) = -int_0^s theta(mu'(r)) dr.

    Polynomial curves under a constant Reeb field are lifted exactly; everything
    else goes through quadrature for f and the numerical flow.

    Raises:
        PoleError: coefficient pole along mu
        FlowExitError: the Reeb flow leaves the chart
        ToleranceNotReachedError: |theta(mu~')| above tol at some sample
    """
    settings = settings or get_settings()
    tol = settings.horizontality_tol if tol is None else tol
    numeric = S.numeric
    numeric.check_poles(mu.samples(settings.horizontality_samples)[0])

    flow = ReebFlow(numeric)
    exact = flow.is_translation and all(isinstance(seg, PolynomialSegment) for seg in mu.segments)
    offset = sp.Integer(0) if exact else 0.0
    lifted = []
    for seg in mu.segments:
        if exact:
            result = _exact_lift(S, seg, offset)
            if result is not None:
                new_seg, offset = result
                lifted.append(new_seg)
                continue
            exact = False
            offset = float(offset)
        h = HorizontalizedSegment(seg, flow, float(offset))
        offset = h.end_offset
        lifted.append(h)

    curve = ChartCurve(tuple(lifted))
    defect = horizontality_defect(numeric, curve, settings.horizontality_samples)
    if defect > tol:
        logger.error(f"horizontalization defect {defect:.2e} above {tol:.1e}")
        raise ToleranceNotReachedError("horizontalized curve is not horizontal", {"defect": defect, "tol": tol})
    logger.debug(f"horizontalized {len(curve)} segments, defect {defect:.1e}, shift {float(offset):.3e}")
    return curve, float(offset)


def horizontalize(
    S: ContactStructure,
    mu: ChartCurve,
    tol: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> ChartCurve:
    """Horizontal lift of mu; the end misses mu's end by the xi-time returned from horizontal_lift."""
    return horizontal_lift(S, mu, tol, settings)[0]

