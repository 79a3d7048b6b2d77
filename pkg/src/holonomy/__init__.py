"""Parallel transport, horizontal curves and holonomy algebras."""

from src.holonomy.algebras import (
    HolonomyEstimate,
    ambrose_singer_algebra,
    connection_for_mode,
    holonomy_by_sampling,
)
from src.holonomy.curves import ChartCurve, PolynomialSegment, ReebSegment, coordinate_rectangle
from src.holonomy.horizontalize import horizontal_lift, horizontality_defect, horizontalize, reeb_segment
from src.holonomy.loops import Loop, loop_family, random_path
from src.holonomy.reeb_flow import ReebFlow
from src.holonomy.transport import TransportResult, parallel_transport
from src.holonomy.verify import (
    HolonomyReport,
    ReebTransportCheck,
    WagnerComparison,
    verify_codim_theorem,
    verify_reeb_transport,
    verify_wagner_holonomy,
    wagner_at,
)
from src.holonomy.witt import (
    WittBasis,
    orthogonal_part,
    screen_algebra,
    stabilized_null_line,
    to_witt_form,
    witt_basis,
)

__all__ = [
    "ChartCurve",
    "HolonomyEstimate",
    "HolonomyReport",
    "Loop",
    "PolynomialSegment",
    "ReebFlow",
    "ReebSegment",
    "ReebTransportCheck",
    "TransportResult",
    "WagnerComparison",
    "WittBasis",
    "ambrose_singer_algebra",
    "connection_for_mode",
    "coordinate_rectangle",
    "holonomy_by_sampling",
    "horizontal_lift",
    "horizontality_defect",
    "horizontalize",
    "loop_family",
    "orthogonal_part",
    "parallel_transport",
    "random_path",
    "reeb_segment",
    "screen_algebra",
    "stabilized_null_line",
    "to_witt_form",
    "verify_codim_theorem",
    "verify_reeb_transport",
    "verify_wagner_holonomy",
    "wagner_at",
    "witt_basis",
]
