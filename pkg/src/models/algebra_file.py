"""Algebra files for the classifier: k and a list of triples (a, A row-major, X)."""

import json
from typing import List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, ValidationError, model_validator

from src.algebra.lie_span import LieAlgebraSpan
from src.classifier.triples import TRIPLE_TOL, SoTriple, algebra_from_triples
from src.errors import ManifestError


class TripleRecord(BaseModel):
    a: float = 0.0
    A: List[float]
    X: List[float]

    def to_triple(self) -> SoTriple:
        k = len(self.X)
        return SoTriple(self.a, np.array(self.A, dtype=float).reshape(k, k), np.array(self.X, dtype=float))

    @classmethod
    def from_triple(cls, t: SoTriple) -> "TripleRecord":
        return cls(a=t.a, A=t.A.reshape(-1).tolist(), X=t.X.tolist())


class AlgebraFile(BaseModel):
    """Файл алгебры: k и список троек."""

    name: Optional[str] = None
    k: int = Field(ge=0)
    triples: List[TripleRecord] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_sizes(self) -> "AlgebraFile":
        for i, t in enumerate(self.triples):
            if len(t.X) != self.k or len(t.A) != self.k * self.k:
                raise ValueError(f"triple {i} does not match k={self.k}")
        return self

    @classmethod
    def parse(cls, text: str) -> "AlgebraFile":
        """
        Raises:
            ManifestError: invalid JSON or shapes
        """
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            logger.error(f"invalid algebra file: {e.error_count()} errors")
            raise ManifestError("invalid algebra file", {"errors": json.loads(e.json())}) from e

    @classmethod
    def from_triples(cls, triples, k: int, name: Optional[str] = None) -> "AlgebraFile":
        return cls(name=name, k=k, triples=[TripleRecord.from_triple(t) for t in triples])

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2) + "\n"

    def to_triples(self) -> List[SoTriple]:
        return [t.to_triple() for t in self.triples]

    def algebra(self, tol: float = TRIPLE_TOL) -> LieAlgebraSpan:
        return algebra_from_triples(self.to_triples(), tol, self.k)
