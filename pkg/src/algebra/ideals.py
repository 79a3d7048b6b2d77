"""Ideals, codimension, derived algebra and the codimension-one ideal oracle."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger

from src.algebra.lie_span import (
    LieAlgebraSpan,
    bracket,
    complement_in,
    hyperplane_through,
    lie_closure,
    span_basis,
)
from src.errors import ContainmentError, DescriptorError


def _require_contained(I: LieAlgebraSpan, g: LieAlgebraSpan, tol: Optional[float]) -> None:
    if I.ambient_dim != g.ambient_dim or not g.contains_span(I, tol):
        raise ContainmentError(
            "subspace is not contained in the algebra",
            {"sub_dim": I.dim, "algebra_dim": g.dim},
        )


def is_ideal(I: LieAlgebraSpan, g: LieAlgebraSpan, tol: Optional[float] = None) -> bool:
    """
    [g, I] ⊆ I.

    Raises:
        ContainmentError: I is not inside g
    """
    _require_contained(I, g, tol)
    g_mats = g.orthonormal_matrices()
    i_mats = I.orthonormal_matrices()
    for X in g_mats:
        for Y in i_mats:
            if not I.contains(bracket(X, Y), tol):
                return False
    return True


def codim(I: LieAlgebraSpan, g: LieAlgebraSpan, tol: Optional[float] = None) -> int:
    _require_contained(I, g, tol)
    return g.dim - I.dim


def derived_algebra(g: LieAlgebraSpan) -> LieAlgebraSpan:
    """[g, g], closed under brackets."""
    mats = g.orthonormal_matrices()
    brackets = [bracket(mats[i], mats[j]) for i in range(len(mats)) for j in range(i + 1, len(mats))]
    return lie_closure(span_basis(brackets, g.tol, g.ambient_dim))


@dataclass(frozen=True)
class Codim1Family:
    """
    Все идеалы коразмерности 1: гиперплоскости в g, содержащие g'.

    Ideals are parametrised by nonzero functionals alpha on the complement
    directions (up to scale), so the family has parameter_dim = d - 1.
    """

    algebra: LieAlgebraSpan
    derived: LieAlgebraSpan
    complement: tuple = field(default_factory=tuple)
    representatives: tuple = field(default_factory=tuple)

    @property
    def kind(self) -> str:
        return "none" if not self.complement else "family"

    @property
    def quotient_dim(self) -> int:
        return len(self.complement)

    @property
    def parameter_dim(self) -> int:
        return max(self.quotient_dim - 1, 0)

    def member(self, functional) -> LieAlgebraSpan:
        """
        Ideal g' + ker(functional) for a functional on the complement directions.

        Raises:
            DescriptorError: empty family, wrong length or zero functional
        """
        functional = np.asarray(functional, dtype=float).reshape(-1)
        if not self.complement:
            raise DescriptorError("algebra has no codimension-one ideals")
        if functional.size != self.quotient_dim:
            raise DescriptorError(
                "functional has wrong length", {"expected": self.quotient_dim, "got": int(functional.size)}
            )
        if not np.any(functional):
            raise DescriptorError("functional must be nonzero")
        return hyperplane_through(self.derived, self.complement, functional, self.algebra.tol)

    def random_member(self, rng: np.random.Generator) -> LieAlgebraSpan:
        return self.member(rng.standard_normal(self.quotient_dim))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "algebra_dim": self.algebra.dim,
            "derived_dim": self.derived.dim,
            "parameter_dim": self.parameter_dim,
            "representatives": len(self.representatives),
        }


def codim1_ideals_oracle(g: LieAlgebraSpan) -> Codim1Family:
    """
    Codimension-one ideals of g via the derived algebra.

    A hyperplane is an ideal exactly when it contains g'. Representatives are
    g' plus all but one complement direction, one per omitted direction.
    """
    derived = derived_algebra(g)
    complement = complement_in(derived, g)
    representatives: List[LieAlgebraSpan] = []
    for skip in range(len(complement)):
        functional = np.zeros(len(complement))
        functional[skip] = 1.0
        representatives.append(hyperplane_through(derived, complement, functional, g.tol))

    logger.debug(f"oracle: dim g = {g.dim}, dim g' = {derived.dim}, {len(representatives)} representatives")
    return Codim1Family(
        algebra=g,
        derived=derived,
        complement=tuple(complement),
        representatives=tuple(representatives),
    )
