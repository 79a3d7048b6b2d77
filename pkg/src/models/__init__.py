"""Models module."""

from src.models.algebra_file import AlgebraFile, TripleRecord
from src.models.enums import HolonomyKind, HolonomyMode, IdealCase
from src.models.manifest import Manifest, ManifestFlags
from src.models.report import ErrorBlock, Report, ReportSection

__all__ = [
    "AlgebraFile",
    "ErrorBlock",
    "HolonomyKind",
    "HolonomyMode",
    "IdealCase",
    "Manifest",
    "ManifestFlags",
    "Report",
    "ReportSection",
    "TripleRecord",
]
