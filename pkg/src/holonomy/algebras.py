"""
Holonomy algebras at a point.

Two independent routes: Ambrose-Singer (transported curvature values) and
sampling (logarithms of transports around small loops).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
from loguru import logger

from src.algebra.lie_span import LieAlgebraSpan, lie_closure, span_basis
from src.algebra.matrix_functions import matrix_log
from src.chart.numeric import LambdifiedArray
from src.config.settings import Settings, get_settings
from src.contact.connection import (
    ConnectionCoeffs,
    adapted_connection,
    extended_connection,
    horizontal_connection,
    is_K_contact,
)
from src.contact.curvature import annihilated_bivectors, reeb_curvature, schouten_curvature, wagner_endomorphism
from src.contact.structure import ContactStructure
from src.errors import SubholonomyError
from src.holonomy.horizontalize import horizontalize
from src.holonomy.loops import Loop, loop_family, random_path
from src.holonomy.transport import parallel_transport
from src.models.enums import HolonomyMode

T = TypeVar("T")
R = TypeVar("R")

# loop logarithms below this (after dividing by scale^2) are treated as zero
LOG_FLOOR = 1e-7


@dataclass(frozen=True)
class HolonomyEstimate:
    """
    Оценка алгебры голономии.

    dim_history: span dimension after each curve or loop, before closure
    stable: dimension did not change over the second half of the budget
    """

    algebra: LieAlgebraSpan
    mode: str
    method: str
    curves: int
    discarded: int
    dim_history: Tuple[int, ...] = field(default_factory=tuple)
    tol: float = 1e-6

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def stable(self) -> bool:
        if not self.dim_history:
            return True
        half = self.dim_history[len(self.dim_history) // 2]
        return half == self.dim_history[-1]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "method": self.method,
            "dim": self.dim,
            "basis": self.algebra.to_lists(),
            "curves": self.curves,
            "discarded": self.discarded,
            "stable_over_second_half": self.stable,
            "tol": self.tol,
        }


def map_ordered(fn: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    """fn over items, results in input order; threads when workers > 1."""
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _dims_so_far(mats: List[np.ndarray], sizes: List[int], tol: float, rank: int) -> Tuple[int, ...]:
    history = []
    total = 0
    for size in sizes:
        total += size
        history.append(span_basis(mats[:total], tol, rank).dim)
    return tuple(history)


def _closed(mats: List[np.ndarray], tol: float, rank: int) -> LieAlgebraSpan:
    return lie_closure(span_basis(mats, tol, rank))


def _basepoint(S: ContactStructure, x: Optional[Sequence]) -> np.ndarray:
    return S.basepoint_floats() if x is None else np.asarray(x, dtype=float)


# ============================================================================
# AMBROSE-SINGER
# ============================================================================


def ambrose_singer_algebra(
    S: ContactStructure,
    x: Optional[Sequence] = None,
    mode: HolonomyMode = HolonomyMode.HORIZONTAL,
    budget: Optional[int] = None,
    settings: Optional[Settings] = None,
    rng: Optional[np.random.Generator] = None,
) -> HolonomyEstimate:
    """
    Span of T_gamma^{-1} R_y(B) T_gamma over random curves gamma from x, then Lie closure.

    horizontal: nabla^g along horizontal curves, B over {B : d theta_y(B) = 0}.
    adapted: nabla^tau along horizontal and arbitrary curves, all frame bivectors
    plus the Reeb-direction values R^tau(xi, E_a).
    """
    settings = settings or get_settings()
    rng = rng or np.random.default_rng(settings.seed)
    mode = HolonomyMode(mode)
    budget = settings.ambrose_singer_paths if budget is None else budget
    x = _basepoint(S, x)
    rank = S.rank
    tol = settings.holonomy_rank_tol

    if not is_K_contact(S):
        logger.warning(f"'{S.name}' is not K-contact; {mode.value} holonomy computed without the theorem's hypothesis")

    base = horizontal_connection(S)
    if mode == HolonomyMode.HORIZONTAL:
        conn = base
        extra: Optional[LambdifiedArray] = None
    elif mode == HolonomyMode.ADAPTED:
        conn = adapted_connection(S, base)
        extra = LambdifiedArray(S.chart, reeb_curvature(S, conn))
    else:
        raise ValueError("Ambrose-Singer generation supports horizontal and adapted modes")
    curvature = schouten_curvature(S, conn)

    def values_at(y: np.ndarray) -> List[np.ndarray]:
        if mode == HolonomyMode.HORIZONTAL:
            return curvature.bivectors_at(y, annihilated_bivectors(S.numeric.omega(y)))
        values = list(curvature.numeric(y))
        if extra is not None:
            values += list(extra(y))
        return values

    paths = [random_path(x, settings.path_scale, rng) for _ in range(budget)]

    def generators(k: int) -> Optional[List[np.ndarray]]:
        if k < 0:
            return values_at(x)
        try:
            curve = paths[k]
            if mode == HolonomyMode.HORIZONTAL or k % 2 == 0:
                curve = horizontalize(S, curve, settings=settings)
            transport = parallel_transport(conn, curve, settings=settings)
        except SubholonomyError as e:
            logger.warning(f"path {k} skipped: {e.message}")
            return None
        M = transport.matrix
        M_inv = np.linalg.inv(M)
        return [M_inv @ V @ M for V in values_at(curve.end())]

    results = map_ordered(generators, list(range(-1, budget)), settings.workers)
    mats: List[np.ndarray] = []
    sizes: List[int] = []
    discarded = 0
    for gens in results:
        if gens is None:
            discarded += 1
            continue
        mats.extend(gens)
        sizes.append(len(gens))

    algebra = _closed(mats, tol, rank)
    estimate = HolonomyEstimate(
        algebra=algebra,
        mode=mode.value,
        method="ambrose_singer",
        curves=len(sizes),
        discarded=discarded,
        dim_history=_dims_so_far(mats, sizes, tol, rank),
        tol=tol,
    )
    logger.info(f"✓ Ambrose-Singer {mode.value} algebra of '{S.name}': dim {algebra.dim}")
    if not estimate.stable:
        logger.warning(f"{mode.value} algebra dimension still grew in the second half of the budget")
    return estimate


# ============================================================================
# LOOP SAMPLING
# ============================================================================


def connection_for_mode(S: ContactStructure, mode: HolonomyMode) -> ConnectionCoeffs:
    """nabla^g, nabla^tau or nabla^W."""
    mode = HolonomyMode(mode)
    base = horizontal_connection(S)
    if mode == HolonomyMode.HORIZONTAL:
        return base
    if mode == HolonomyMode.ADAPTED:
        return adapted_connection(S, base)
    return extended_connection(S, wagner_endomorphism(S), label="wagner", base=base)


def holonomy_by_sampling(
    S: ContactStructure,
    conn: ConnectionCoeffs,
    x: Optional[Sequence] = None,
    scales: Optional[Sequence[float]] = None,
    count: Optional[int] = None,
    tol: Optional[float] = None,
    settings: Optional[Settings] = None,
    rng: Optional[np.random.Generator] = None,
) -> HolonomyEstimate:
    """
    Span of log(T_loop) / scale^2 over small loops at x, then Lie closure.

    Extended connections use xi-closed rectangles, horizontal-only connections
    use horizontal figure-eights. Transports with ||T - I|| >= log_max_defect
    are discarded (the smaller scales cover them).
    """
    settings = settings or get_settings()
    rng = rng or np.random.default_rng(settings.seed)
    scales = tuple(settings.loop_scales if scales is None else scales)
    count = settings.loops_per_plane if count is None else count
    tol = settings.holonomy_rank_tol if tol is None else tol
    x = _basepoint(S, x)
    rank = S.rank

    loops: List[Loop] = []
    for scale in scales:
        loops.extend(loop_family(S, x, scale, count, rng, closing=conn.is_extended, settings=settings))

    def logarithm(loop: Loop) -> Optional[np.ndarray]:
        try:
            transport = parallel_transport(conn, loop.curve, settings=settings)
        except SubholonomyError as e:
            logger.warning(f"loop skipped: {e.message}")
            return None
        log = matrix_log(transport.matrix, settings.log_max_defect)
        if log is None:
            return None
        return log / loop.scale ** 2 if loop.scale else log

    logs = map_ordered(logarithm, loops, settings.workers)
    mats = [L for L in logs if L is not None and np.max(np.abs(L)) > LOG_FLOOR]
    discarded = sum(1 for L in logs if L is None)

    algebra = _closed(mats, tol, rank) if mats else LieAlgebraSpan(rank, (), tol)
    estimate = HolonomyEstimate(
        algebra=algebra,
        mode=conn.label,
        method="sampling",
        curves=len(loops) - discarded,
        discarded=discarded,
        dim_history=_dims_so_far(mats, [1] * len(mats), tol, rank),
        tol=tol,
    )
    logger.info(f"✓ sampled {conn.label} holonomy of '{S.name}': dim {algebra.dim} from {len(loops)} loops")
    return estimate
