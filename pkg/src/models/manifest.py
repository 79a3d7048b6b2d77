"""Manifest: the (M, theta, g) input document."""

import hashlib
import json
from typing import List, Optional

from loguru import logger
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.chart.chart import Chart, to_rational
from src.chart.fields import FrameMetric, OneForm, VectorField
from src.contact.structure import ContactStructure
from src.errors import ManifestError


class ManifestFlags(BaseModel):
    """Флаги манифеста."""

    expect_K_contact: bool = True
    note: Optional[str] = None


class Manifest(BaseModel):
    """
    Contact sub-pseudo-Riemannian manifold in one chart.

    theta: components of theta in dx^i; frame: coordinate components of E_a;
    gram: g(E_a, E_b); basepoint: rational literals.
    """

    name: str = "manifest"
    n: int = Field(ge=5)
    coords: List[str]
    theta: List[str]
    frame: List[List[str]]
    gram: List[List[str]]
    basepoint: List[str]
    flags: ManifestFlags = Field(default_factory=ManifestFlags)

    @field_validator("basepoint", mode="before")
    @classmethod
    def _basepoint_as_text(cls, value):
        return [str(v) for v in value]

    @model_validator(mode="after")
    def _check_shapes(self) -> "Manifest":
        n = self.n
        if n % 2 == 0:
            raise ValueError("n must be odd")
        if len(self.coords) != n or len(self.theta) != n or len(self.basepoint) != n:
            raise ValueError("coords, theta and basepoint must have n entries")
        if len(self.frame) != n - 1 or any(len(E) != n for E in self.frame):
            raise ValueError("frame must be n - 1 fields with n components each")
        if len(self.gram) != n - 1 or any(len(row) != n - 1 for row in self.gram):
            raise ValueError("gram must be (n - 1) x (n - 1)")
        return self

    # ========================================================================
    # SERIALISATION
    # ========================================================================

    @classmethod
    def parse(cls, text: str) -> "Manifest":
        """
        Raises:
            ManifestError: invalid JSON or fields
        """
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            logger.error(f"invalid manifest: {e.error_count()} errors")
            raise ManifestError("invalid manifest", {"errors": json.loads(e.json())}) from e

    def to_json(self) -> str:
        """Canonical text: fixed key order, two-space indent, trailing newline."""
        return json.dumps(self.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n"

    def manifest_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()

    # ========================================================================
    # STRUCTURE
    # ========================================================================

    def to_structure(self) -> ContactStructure:
        """
        Raises:
            ExpressionError, PreconditionError, NotContactError, MetricDegeneracyError
        """
        chart = Chart(self.coords)
        theta = OneForm.parse(chart, self.theta)
        frame = tuple(VectorField.parse(chart, E) for E in self.frame)
        gram = tuple(tuple(chart.parse(g) for g in row) for row in self.gram)
        basepoint = [to_rational(v) for v in self.basepoint]
        return ContactStructure(chart, theta, FrameMetric(frame, gram), basepoint, name=self.name)

    @classmethod
    def from_structure(cls, S: ContactStructure, flags: Optional[ManifestFlags] = None) -> "Manifest":
        """Emit the canonical manifest of a structure."""
        chart = S.chart
        return cls(
            name=S.name,
            n=S.n,
            coords=list(chart.coords),
            theta=S.theta.emit(),
            frame=[E.emit() for E in S.frame],
            gram=[[chart.emit(g) for g in row] for row in S.metric.gram],
            basepoint=[str(v) for v in S.basepoint],
            flags=flags or ManifestFlags(),
        )
