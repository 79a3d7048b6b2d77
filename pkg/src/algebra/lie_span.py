"""
Finite-dimensional matrix Lie algebras with tolerance-governed rank.

A span is decided by singular values relative to the largest one; the stored
basis is a subset of the input matrices chosen by column-pivoted QR, so basis
elements stay recognisable (for instance X_i ^ V rather than rotations of it).
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence

import numpy as np
from loguru import logger
from scipy.linalg import null_space, qr

from src.errors import ClosureNotConvergedError, ContainmentError, DimensionMismatchError

DEFAULT_RANK_TOL = 1e-9


def bracket(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix commutator [A, B] = AB - BA."""
    return A @ B - B @ A


def _frozen(M) -> np.ndarray:
    arr = np.array(M, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LieAlgebraSpan:
    """
    Линейная оболочка матриц ambient_dim x ambient_dim.

    Attributes:
        ambient_dim: размер матриц
        basis: линейно независимые (при tol) матрицы
        tol: относительный порог сингулярных чисел
    """

    ambient_dim: int
    basis: tuple = field(default_factory=tuple)
    tol: float = DEFAULT_RANK_TOL

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(_frozen(M) for M in self.basis))
        for M in self.basis:
            if M.shape != (self.ambient_dim, self.ambient_dim):
                raise DimensionMismatchError(
                    "basis matrix has wrong shape",
                    {"expected": self.ambient_dim, "got": list(M.shape)},
                )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    @cached_property
    def flat(self) -> np.ndarray:
        """Basis as columns of an (ambient_dim^2 x dim) matrix."""
        if not self.basis:
            return np.zeros((self.ambient_dim ** 2, 0))
        return np.stack([M.reshape(-1) for M in self.basis], axis=1)

    @cached_property
    def orthonormal(self) -> np.ndarray:
        """Frobenius-orthonormal basis of the span, as columns."""
        if not self.basis:
            return np.zeros((self.ambient_dim ** 2, 0))
        u, _, _ = np.linalg.svd(self.flat, full_matrices=False)
        return u[:, : self.dim]

    def orthonormal_matrices(self) -> List[np.ndarray]:
        n = self.ambient_dim
        return [self.orthonormal[:, i].reshape(n, n) for i in range(self.dim)]

    def coordinates(self, M: np.ndarray) -> np.ndarray:
        """Least-squares coordinates of M in the stored basis."""
        if not self.basis:
            return np.zeros(0)
        coords, *_ = np.linalg.lstsq(self.flat, np.asarray(M, dtype=float).reshape(-1), rcond=None)
        return coords

    def residual(self, M: np.ndarray) -> float:
        """Distance from M to the span, relative to max(||M||, 1)."""
        vec = np.asarray(M, dtype=float).reshape(-1)
        if vec.size != self.ambient_dim ** 2:
            raise DimensionMismatchError("matrix does not live in the ambient space")
        Q = self.orthonormal
        rest = vec - Q @ (Q.T @ vec) if Q.shape[1] else vec
        return float(np.linalg.norm(rest) / max(np.linalg.norm(vec), 1.0))

    def contains(self, M: np.ndarray, tol: Optional[float] = None) -> bool:
        return self.residual(M) <= (self.tol if tol is None else tol)

    def contains_span(self, other: "LieAlgebraSpan", tol: Optional[float] = None) -> bool:
        return all(self.contains(M, tol) for M in other.basis)

    def equals(self, other: "LieAlgebraSpan", tol: Optional[float] = None) -> bool:
        """Mutual containment."""
        return self.dim == other.dim and self.contains_span(other, tol) and other.contains_span(self, tol)

    def is_closed(self, tol: Optional[float] = None) -> bool:
        mats = self.orthonormal_matrices()
        return all(
            self.contains(bracket(mats[i], mats[j]), tol)
            for i in range(len(mats))
            for j in range(i + 1, len(mats))
        )

    def conjugate(self, P: np.ndarray) -> "LieAlgebraSpan":
        """Span of P^{-1} M P."""
        P = np.asarray(P, dtype=float)
        P_inv = np.linalg.inv(P)
        return LieAlgebraSpan(self.ambient_dim, tuple(P_inv @ M @ P for M in self.basis), self.tol)

    def to_lists(self) -> List[list]:
        return [M.tolist() for M in self.basis]


def span_basis(
    mats: Iterable[np.ndarray],
    tol: float = DEFAULT_RANK_TOL,
    ambient_dim: Optional[int] = None,
) -> LieAlgebraSpan:
    """
    Maximal linearly independent subset of mats.

    Rank = number of nonzero singular values >= tol * max(1, largest one); the
    absolute floor keeps pure float noise at rank 0. The subset is picked by
    column-pivoted QR and kept in input order.

    Raises:
        DimensionMismatchError: matrices of different shapes
    """
    mats = [np.asarray(M, dtype=float) for M in mats]
    if not mats:
        return LieAlgebraSpan(ambient_dim or 0, (), tol)

    shape = mats[0].shape
    if any(M.shape != shape for M in mats) or len(shape) != 2 or shape[0] != shape[1]:
        raise DimensionMismatchError("span_basis expects square matrices of one shape")
    n = shape[0]

    A = np.stack([M.reshape(-1) for M in mats], axis=1)
    singular = np.linalg.svd(A, compute_uv=False)
    floor = tol * max(1.0, float(singular[0])) if singular.size else 0.0
    rank = int(np.sum((singular >= floor) & (singular > 0.0)))
    if rank == 0:
        return LieAlgebraSpan(n, (), tol)

    _, _, pivots = qr(A, mode="economic", pivoting=True)
    chosen = sorted(int(i) for i in pivots[:rank])
    return LieAlgebraSpan(n, tuple(mats[i] for i in chosen), tol)


def lie_closure(gens: LieAlgebraSpan, max_depth: Optional[int] = None) -> LieAlgebraSpan:
    """
    Smallest bracket-closed span containing gens.

    Each round adjoins the brackets of an orthonormal basis and re-spans; stops
    when the dimension stabilises.

    Raises:
        ClosureNotConvergedError: dimension still growing after max_depth rounds
    """
    if gens.dim == 0:
        return gens

    depth = max_depth if max_depth is not None else gens.ambient_dim ** 2
    current = gens
    for round_index in range(depth):
        mats = current.orthonormal_matrices()
        brackets = [bracket(mats[i], mats[j]) for i in range(len(mats)) for j in range(i + 1, len(mats))]
        grown = span_basis(list(current.basis) + brackets, current.tol, current.ambient_dim)
        if grown.dim == current.dim:
            logger.debug(f"closure stable at dim {current.dim} after {round_index} rounds")
            return current
        current = grown

    mats = current.orthonormal_matrices()
    brackets = [bracket(mats[i], mats[j]) for i in range(len(mats)) for j in range(i + 1, len(mats))]
    if span_basis(list(current.basis) + brackets, current.tol, current.ambient_dim).dim == current.dim:
        return current

    logger.error(f"lie_closure did not converge in {depth} rounds (dim {current.dim})")
    raise ClosureNotConvergedError(
        "Lie closure still growing", {"max_depth": depth, "dim": current.dim}
    )


def sum_spans(*spans: LieAlgebraSpan, tol: Optional[float] = None) -> LieAlgebraSpan:
    """Linear sum of spans living in one ambient space."""
    if not spans:
        raise ValueError("sum_spans needs at least one span")
    n = spans[0].ambient_dim
    mats = [M for s in spans for M in s.basis]
    return span_basis(mats, tol if tol is not None else spans[0].tol, n)


def complement_in(sub: LieAlgebraSpan, whole: LieAlgebraSpan) -> List[np.ndarray]:
    """Frobenius-orthonormal complement of sub inside whole."""
    if whole.dim == 0:
        return []
    n = whole.ambient_dim
    W = whole.orthonormal
    if sub.dim:
        Q = sub.orthonormal
        W = W - Q @ (Q.T @ W)
    u, s, _ = np.linalg.svd(W, full_matrices=False)
    count = whole.dim - sub.dim
    return [u[:, i].reshape(n, n) for i in range(count)]


def hyperplane_through(sub: LieAlgebraSpan, directions: Sequence[np.ndarray], functional: np.ndarray, tol: float):
    """sub + {sum y_i d_i : <functional, y> = 0}."""
    functional = np.atleast_2d(np.asarray(functional, dtype=float))
    kernel = null_space(functional)
    mats = list(sub.basis)
    for col in kernel.T:
        mats.append(sum(c * D for c, D in zip(col, directions)))
    return span_basis(mats, tol, sub.ambient_dim)
