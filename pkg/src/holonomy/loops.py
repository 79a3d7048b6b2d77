"""Small loops at a point for holonomy sampling."""

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import brentq

from src.config.settings import Settings, get_settings
from src.contact.structure import ContactStructure
from src.errors import SubholonomyError
from src.holonomy.curves import ChartCurve, PolynomialSegment, coordinate_rectangle, theta_circulation
from src.holonomy.horizontalize import horizontal_lift, reeb_segment
from src.holonomy.reeb_flow import ReebFlow

# companion rectangles are at most this many times longer than the first one
MAX_STRETCH = 4.0
# sides of random paths are rounded to this grid so exact lifts stay small
PATH_GRID = 10_000


@dataclass(frozen=True, eq=False)
class Loop:
    """
    Петля в точке x.

    closing_time: xi-time of the final Reeb segment (0 for purely horizontal loops)
    """

    curve: ChartCurve
    scale: float
    planes: Tuple[Tuple[int, int], ...]
    closing_time: float = 0.0

    @property
    def is_horizontal(self) -> bool:
        return self.closing_time == 0.0


def coordinate_planes(n: int) -> List[Tuple[int, int]]:
    return list(combinations(range(n), 2))


def _companion_plane(
    dtheta: np.ndarray, plane: Tuple[int, int], rng: np.random.Generator
) -> Optional[Tuple[int, int]]:
    """A random coordinate plane where d theta is comparable to its maximum."""
    candidates = [p for p in coordinate_planes(dtheta.shape[0]) if p != plane]
    weights = np.array([abs(dtheta[i, j]) for i, j in candidates])
    if not candidates or weights.max() == 0.0:
        return None
    good = [p for p, w in zip(candidates, weights) if w >= 0.5 * weights.max()]
    return good[int(rng.integers(len(good)))]


def figure_eight(
    S: ContactStructure,
    x: Sequence,
    plane: Tuple[int, int],
    scale: float,
    rng: np.random.Generator,
    settings: Settings,
) -> Optional[Loop]:
    """
    Horizontal loop: rectangle in `plane` followed by a rectangle in a companion
    plane whose side is tuned (brentq) so the total theta-circulation vanishes.

    Returns None when no closing stretch exists within MAX_STRETCH.
    """
    numeric = S.numeric
    x = np.asarray(x, dtype=float)
    i, j = plane
    signs = rng.choice([-1.0, 1.0], size=2)
    first = coordinate_rectangle(x, i, j, signs[0] * scale, signs[1] * scale)
    circulation = theta_circulation(numeric, first)

    if abs(circulation) <= settings.horizontality_tol:
        curve, planes = first, (plane,)
    else:
        companion = _companion_plane(numeric.dtheta_coords(x), plane, rng)
        if companion is None:
            return None
        k, l = companion

        def total(stretch: float) -> float:
            second = coordinate_rectangle(x, k, l, stretch * scale, scale)
            return circulation + theta_circulation(numeric, second)

        try:
            stretch = brentq(total, -MAX_STRETCH, MAX_STRETCH, xtol=1e-15)
        except ValueError:
            logger.debug(f"no figure-eight closes in planes {plane} / {companion} at scale {scale}")
            return None
        second = coordinate_rectangle(x, k, l, stretch * scale, scale)
        curve, planes = first.then(second), (plane, companion)

    lifted, shift = horizontal_lift(S, curve, settings=settings)
    if abs(shift) > settings.horizontality_tol:
        logger.debug(f"figure-eight misses closure by xi-time {shift:.2e}; discarded")
        return None
    return Loop(curve=lifted, scale=scale, planes=planes)


def xi_closed_rectangle(
    S: ContactStructure,
    x: Sequence,
    plane: Tuple[int, int],
    scale: float,
    rng: np.random.Generator,
    settings: Settings,
) -> Loop:
    """Horizontalized coordinate rectangle closed by a final Reeb segment."""
    i, j = plane
    signs = rng.choice([-1.0, 1.0], size=2)
    rect = coordinate_rectangle(np.asarray(x, dtype=float), i, j, signs[0] * scale, signs[1] * scale)
    lifted, shift = horizontal_lift(S, rect, settings=settings)
    if shift == 0.0:
        return Loop(curve=lifted, scale=scale, planes=(plane,))
    closing = reeb_segment(S, ReebFlow(S.numeric), lifted.end(), -shift)
    return Loop(curve=lifted.then(ChartCurve((closing,))), scale=scale, planes=(plane,), closing_time=-shift)


def loop_family(
    S: ContactStructure,
    x: Sequence,
    scale: float,
    count: int,
    rng: Optional[np.random.Generator] = None,
    closing: bool = False,
    settings: Optional[Settings] = None,
) -> List[Loop]:
    """
    Up to `count` loops at x of coordinate size `scale`.

    Planes are visited in a random order, every plane before any repeats.
    closing=True: xi-closed rectangles (for connections defined on all of TM).
    closing=False: horizontal figure-eights; loops that do not close are dropped.
    """
    settings = settings or get_settings()
    rng = rng or np.random.default_rng(settings.seed)
    if scale == 0.0:
        constant = ChartCurve.polygon([list(x), list(x)])
        return [Loop(curve=constant, scale=0.0, planes=()) for _ in range(count)]

    planes = coordinate_planes(S.n)
    order = rng.permutation(len(planes))
    loops: List[Loop] = []
    for k in range(count):
        plane = planes[int(order[k % len(planes)])]
        try:
            if closing:
                loops.append(xi_closed_rectangle(S, x, plane, scale, rng, settings))
            else:
                loop = figure_eight(S, x, plane, scale, rng, settings)
                if loop is not None:
                    loops.append(loop)
        except SubholonomyError as e:
            logger.warning(f"loop in plane {plane} at scale {scale} dropped: {e.message}")

    logger.debug(f"{len(loops)}/{count} loops at scale {scale} ({'xi-closed' if closing else 'horizontal'})")
    return loops


def random_path(
    x: Sequence, scale: float, rng: np.random.Generator, pieces: int = 2
) -> ChartCurve:
    """Random polygon from x with `pieces` straight pieces of length about `scale`."""
    points = [list(np.asarray(x, dtype=float))]
    for _ in range(pieces):
        step = rng.standard_normal(len(points[0]))
        step *= scale * rng.uniform(0.5, 1.0) / np.linalg.norm(step)
        points.append(list(np.round((np.asarray(points[-1]) + step) * PATH_GRID) / PATH_GRID))
    return ChartCurve.polygon(points)


def straight_segment(start: Sequence, end: Sequence) -> ChartCurve:
    return ChartCurve((PolynomialSegment.line(start, end),))
