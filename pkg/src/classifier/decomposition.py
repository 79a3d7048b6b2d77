"""Orthogonal decomposition R^k = R^{k_0} + R^{k_1} + ... + R^{k_r} of an h in so(k)."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger
from scipy.linalg import eigh, null_space

from src.algebra.lie_span import LieAlgebraSpan, span_basis
from src.errors import InseparableBlocksError

SPLIT_ATTEMPTS = 8
EIGEN_GAP = 1e-6


@dataclass(frozen=True)
class IrreducibleBlock:
    """basis: k x k_i orthonormal columns; algebra: h restricted, on R^{k_i}."""

    basis: np.ndarray
    algebra: LieAlgebraSpan

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def to_dict(self) -> dict:
        return {"dim": self.dim, "algebra_dim": self.algebra.dim, "basis": self.basis.tolist()}


@dataclass(frozen=True)
class Decomposition:
    k: int
    kernel: np.ndarray
    blocks: tuple = field(default_factory=tuple)

    @property
    def k0(self) -> int:
        return self.kernel.shape[1]

    @property
    def block_dims(self) -> List[int]:
        return [b.dim for b in self.blocks]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "k0": self.k0,
            "kernel": self.kernel.tolist(),
            "blocks": [b.to_dict() for b in self.blocks],
        }


def common_kernel(mats, k: int, tol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the vectors killed by every matrix."""
    if not mats:
        return np.eye(k)
    return null_space(np.vstack(mats), rcond=tol)


def symmetric_commutant(mats, d: int, tol: float) -> List[np.ndarray]:
    """Basis of symmetric S with [H, S] = 0 for all H in mats."""
    sym = []
    for p in range(d):
        for q in range(p, d):
            S = np.zeros((d, d))
            S[p, q] = S[q, p] = 1.0
            sym.append(S)
    if not mats:
        return sym
    columns = np.stack([np.concatenate([(H @ S - S @ H).reshape(-1) for H in mats]) for S in sym], axis=1)
    kernel = null_space(columns, rcond=tol)
    return [sum(c * S for c, S in zip(col, sym)) for col in kernel.T]


def _clusters(values: np.ndarray, gap: float) -> List[List[int]]:
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] > gap:
            groups.append([i])
        else:
            groups[-1].append(i)
    return groups


def _split(mats, Q: np.ndarray, tol: float, rng: np.random.Generator) -> List[np.ndarray]:
    d = Q.shape[1]
    if d == 0:
        return []
    restricted = [Q.T @ H @ Q for H in mats]
    commutant = symmetric_commutant(restricted, d, tol)
    # the identity is always there
    if len(commutant) <= 1:
        return [Q]

    smallest_gap = np.inf
    for _ in range(SPLIT_ATTEMPTS):
        S = sum(r * C for r, C in zip(rng.standard_normal(len(commutant)), commutant))
        values, vectors = eigh(S)
        spread = max(float(np.max(np.abs(values))), 1.0)
        gaps = np.diff(values)
        if gaps.size:
            smallest_gap = min(smallest_gap, float(np.max(gaps)) / spread)
        groups = _clusters(values, EIGEN_GAP * spread)
        if len(groups) > 1:
            parts = []
            for group in groups:
                parts.extend(_split(mats, Q @ vectors[:, group], tol, rng))
            return parts

    logger.error(f"could not separate invariant blocks of dim {d}")
    raise InseparableBlocksError(
        "invariant subspaces are not separated at the tolerance",
        {"dim": d, "commutant_dim": len(commutant), "gap": smallest_gap},
    )


def irreducible_decomposition(
    h: LieAlgebraSpan, tol: float = 1e-10, seed: Optional[int] = 0
) -> Decomposition:
    """
    R^{k_0} is the common kernel; its complement is split along eigenspaces
    of random symmetric elements of the commutant, recursively.

    Raises:
        InseparableBlocksError: eigenvalues never separate a reducible block
    """
    k = h.ambient_dim
    rng = np.random.default_rng(seed)
    mats = list(h.basis)
    kernel = common_kernel(mats, k, tol)
    rest = null_space(kernel.T) if kernel.shape[1] else np.eye(k)
    if kernel.shape[1] == k:
        rest = np.zeros((k, 0))

    bases = _split(mats, rest, tol, rng)
    blocks = [
        IrreducibleBlock(Q, span_basis([Q.T @ H @ Q for H in mats], h.tol, Q.shape[1]))
        for Q in bases
    ]
    blocks.sort(key=lambda b: (b.dim, b.algebra.dim))
    logger.debug(f"decomposition of dim {h.dim} algebra on R^{k}: k0={kernel.shape[1]}, blocks {[b.dim for b in blocks]}")
    return Decomposition(k=k, kernel=kernel, blocks=tuple(blocks))
