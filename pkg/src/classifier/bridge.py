"""Holonomy algebras of a Lorentzian structure, read in the triple form."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.algebra.ideals import is_ideal
from src.algebra.lie_span import LieAlgebraSpan
from src.classifier.ideal_cases import IdealCaseLabel, classify_codim1_ideal
from src.classifier.types import HolonomyTypeDescriptor, recognize_type
from src.errors import ClassificationFailure, SubholonomyError
from src.holonomy.witt import screen_algebra, stabilized_null_line, witt_basis


@dataclass(frozen=True)
class LorentzianClassification:
    null_vector: Optional[np.ndarray] = None
    descriptor: Optional[HolonomyTypeDescriptor] = None
    ideal: Optional[IdealCaseLabel] = None
    screen_dims: Optional[Tuple[int, int]] = None
    failed: bool = False
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "null_vector": None if self.null_vector is None else self.null_vector.tolist(),
            "type": None if self.descriptor is None else self.descriptor.kind.value,
            "descriptor": None if self.descriptor is None else self.descriptor.to_dict(),
            "ideal_case": None if self.ideal is None else self.ideal.to_dict(),
            "screen_dims": None if self.screen_dims is None else list(self.screen_dims),
            "notes": list(self.notes),
        }


def classify_holonomy_pair(
    horizontal: LieAlgebraSpan, adapted: LieAlgebraSpan, gram: np.ndarray, tol: float = 1e-6
) -> LorentzianClassification:
    """
    Type of the adapted algebra and, when the horizontal one is a codimension-one
    ideal in it, the case label of that ideal.

    A ClassificationFailure is recorded (failed=True) rather than raised.
    """
    try:
        p = stabilized_null_line(adapted, gram, tol)
    except SubholonomyError as e:
        return LorentzianClassification(notes=(e.message,))
    if p is None:
        return LorentzianClassification(notes=("no invariant null line",))

    P = witt_basis(p, gram).matrix
    a_witt, h_witt = adapted.conjugate(P), horizontal.conjugate(P)
    screen_dims = (screen_algebra(horizontal, p, gram, tol).dim, screen_algebra(adapted, p, gram, tol).dim)
    desc = recognize_type(a_witt, tol)
    notes = list(desc.notes)
    label = None
    failed = False

    if desc.is_known and a_witt.contains_span(h_witt, tol) and a_witt.dim - h_witt.dim == 1:
        if is_ideal(h_witt, a_witt, tol):
            try:
                label = classify_codim1_ideal(a_witt, h_witt, tol, desc)
            except ClassificationFailure as e:
                failed = True
                notes.append(e.message)
    elif desc.is_known and a_witt.dim == h_witt.dim:
        notes.append("algebras coincide, no ideal to classify")

    logger.info(
        f"adapted holonomy: type {desc.kind.value}, screen dims {screen_dims}, "
        f"ideal case {label.case.value if label else '-'}"
    )
    return LorentzianClassification(
        null_vector=p, descriptor=desc, ideal=label, screen_dims=screen_dims, failed=failed, notes=tuple(notes)
    )
