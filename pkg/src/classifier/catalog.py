"""
Standard orthogonal algebras and the constructed test corpus.

u(2) and su(2) act on R^4 = H by quaternion multiplications: su(2) by left
multiplication with i, j, k, and u(2) adds right multiplication with i.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import sympy as sp
from loguru import logger

from src.algebra.lie_span import LieAlgebraSpan, span_basis
from src.classifier.triples import SoTriple, TRIPLE_TOL, algebra_from_triples
from src.classifier.types import HolonomyTypeDescriptor, make_type_triples
from src.models.enums import HolonomyKind

LEFT_I = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float)
LEFT_J = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=float)
LEFT_K = LEFT_I @ LEFT_J
RIGHT_I = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], dtype=float)


def so_basis(k: int) -> List[np.ndarray]:
    """E_ij - E_ji for i < j."""
    basis = []
    for i in range(k):
        for j in range(i + 1, k):
            M = np.zeros((k, k))
            M[i, j], M[j, i] = -1.0, 1.0
            basis.append(M)
    return basis


def so(k: int, tol: float = TRIPLE_TOL) -> LieAlgebraSpan:
    return span_basis(so_basis(k), tol, k)


def su2(tol: float = TRIPLE_TOL) -> LieAlgebraSpan:
    return span_basis([LEFT_I, LEFT_J, LEFT_K], tol, 4)


def u2(tol: float = TRIPLE_TOL) -> LieAlgebraSpan:
    """Basis order: left i, j, k, then right i (the centre)."""
    return span_basis([LEFT_I, LEFT_J, LEFT_K, RIGHT_I], tol, 4)


def zero_algebra(k: int, tol: float = TRIPLE_TOL) -> LieAlgebraSpan:
    return LieAlgebraSpan(k, (), tol)


def embed(h: LieAlgebraSpan, k: int, offset: int = 0) -> LieAlgebraSpan:
    """h acting on coordinates offset .. offset + dim - 1 of R^k."""
    mats = []
    for M in h.basis:
        big = np.zeros((k, k))
        big[offset:offset + h.ambient_dim, offset:offset + h.ambient_dim] = M
        mats.append(big)
    return LieAlgebraSpan(k, tuple(mats), h.tol)


def block_sum(blocks: Sequence[LieAlgebraSpan], k: Optional[int] = None) -> LieAlgebraSpan:
    """h_1 + ... + h_r on R^{k_1} + ... + R^{k_r} (+ trivial R^{k_0} at the end)."""
    total = sum(b.ambient_dim for b in blocks)
    k = total if k is None else k
    mats = []
    offset = 0
    for b in blocks:
        mats.extend(embed(b, k, offset).basis)
        offset += b.ambient_dim
    tol = blocks[0].tol if blocks else TRIPLE_TOL
    return LieAlgebraSpan(k, tuple(mats), tol)


def is_bracket_closed_exact(triples: Sequence[SoTriple]) -> bool:
    """Closure of the span of triples, decided by exact rational rank."""
    if not triples:
        return True
    mats = [t.exact_matrix() for t in triples]
    columns = sp.Matrix.hstack(*[M.reshape(len(M), 1) for M in mats])
    rank = columns.rank()
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            B = mats[i] * mats[j] - mats[j] * mats[i]
            if sp.Matrix.hstack(columns, B.reshape(len(B), 1)).rank() != rank:
                return False
    return True


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    triples: tuple
    expected_type: str

    @property
    def algebra(self) -> LieAlgebraSpan:
        return algebra_from_triples(self.triples)


def corpus() -> List[CorpusEntry]:
    """Constructed weakly irreducible algebras covering all four types."""
    so2_on_2 = so(2)
    entries = []

    def add(name: str, desc: HolonomyTypeDescriptor) -> None:
        entries.append(CorpusEntry(name, tuple(make_type_triples(desc)), desc.kind.value))

    add("g1_zero_k4", HolonomyTypeDescriptor(HolonomyKind.TYPE_1, 4, zero_algebra(4)))
    add("g1_so2_k2", HolonomyTypeDescriptor(HolonomyKind.TYPE_1, 2, so2_on_2))
    add("g1_so3_k3", HolonomyTypeDescriptor(HolonomyKind.TYPE_1, 3, so(3)))
    add("g1_u2_k4", HolonomyTypeDescriptor(HolonomyKind.TYPE_1, 4, u2()))
    add("g2_zero_k3", HolonomyTypeDescriptor(HolonomyKind.TYPE_2, 3, zero_algebra(3)))
    add("g2_so2_k3", HolonomyTypeDescriptor(HolonomyKind.TYPE_2, 3, embed(so2_on_2, 3)))
    add("g2_so2_k4", HolonomyTypeDescriptor(HolonomyKind.TYPE_2, 4, embed(so2_on_2, 4)))
    add("g2_so3_k3", HolonomyTypeDescriptor(HolonomyKind.TYPE_2, 3, so(3)))
    add("g2_u2_k4", HolonomyTypeDescriptor(HolonomyKind.TYPE_2, 4, u2()))
    add("g2_so2+so3_k6", HolonomyTypeDescriptor(HolonomyKind.TYPE_2, 6, block_sum([so(2), so(3)], 6)))
    add("g3_so2_k2", HolonomyTypeDescriptor(HolonomyKind.TYPE_3, 2, so2_on_2, phi=np.array([1.0])))
    add("g3_u2_k4", HolonomyTypeDescriptor(HolonomyKind.TYPE_3, 4, u2(), phi=np.array([0.0, 0.0, 0.0, 1.0])))
    add(
        "g3_so2+so2_k4",
        HolonomyTypeDescriptor(HolonomyKind.TYPE_3, 4, block_sum([so(2), so(2)], 4), phi=np.array([1.0, 0.0])),
    )
    add(
        "g4_so2_k3_l2",
        HolonomyTypeDescriptor(HolonomyKind.TYPE_4, 3, embed(so2_on_2, 3), l=2, psi=np.array([[1.0]])),
    )
    add(
        "g4_so2+so2_k6_l4",
        HolonomyTypeDescriptor(
            HolonomyKind.TYPE_4, 6, block_sum([so(2), so(2)], 6), l=4, psi=np.array([[1.0, 0.0], [0.0, 1.0]])
        ),
    )
    add(
        "g4_so2_k4_l3",
        HolonomyTypeDescriptor(HolonomyKind.TYPE_4, 4, embed(so2_on_2, 4), l=3, psi=np.array([[1.0]])),
    )
    add(
        "g4_so2+so2_k6_l5",
        HolonomyTypeDescriptor(
            HolonomyKind.TYPE_4, 6, block_sum([so(2), so(2)], 6), l=5, psi=np.array([[1.0, 0.0]])
        ),
    )
    logger.debug(f"classifier corpus: {len(entries)} algebras")
    return entries
