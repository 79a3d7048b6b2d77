"""
Weakly irreducible subalgebras of so(1,k+1)_{Rp}, types 1-4.

    type 1: (R + h) x R^k
    type 2: h x R^k
    type 3: {(phi(A), A, 0) : A in h} x R^k,  phi != 0, phi|h' = 0
    type 4: {(0, A, X + psi(A)) : A in h, X in R^l},  R^k = R^l + R^{k-l},
            h in so(l), psi: h -> R^{k-l} onto, psi|h' = 0, dim z(h) >= k - l
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger
from scipy.linalg import null_space, orth

from src.algebra.ideals import derived_algebra
from src.algebra.lie_span import LieAlgebraSpan, bracket, span_basis
from src.classifier.triples import TRIPLE_TOL, SoTriple, algebra_from_triples, triples_of
from src.errors import DescriptorError, PreconditionError
from src.models.enums import HolonomyKind


def center_dim(h: LieAlgebraSpan, tol: float = TRIPLE_TOL) -> int:
    """dim z(h)."""
    mats = list(h.basis)
    if not mats:
        return 0
    columns = np.stack(
        [np.concatenate([bracket(Hi, Hj).reshape(-1) for Hj in mats]) for Hi in mats], axis=1
    )
    return null_space(columns, rcond=tol).shape[1]


def annihilates_derived(h: LieAlgebraSpan, values: np.ndarray, tol: float) -> bool:
    """A functional (or stack of functionals) given on h.basis vanishes on h'."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    derived = derived_algebra(h)
    for M in derived.basis:
        if np.max(np.abs(values @ h.coordinates(M)), initial=0.0) > tol * max(np.linalg.norm(M), 1.0):
            return False
    return True


def first_coordinates(k: int, l: int) -> tuple:
    """(R^l, R^{k-l}) as the first l and the last k - l coordinate vectors."""
    eye = np.eye(k)
    return eye[:, :l], eye[:, l:]


@dataclass(frozen=True)
class HolonomyTypeDescriptor:
    """
    Описание алгебры голономии одного из типов 1-4.

    phi: values of phi on h.basis (type 3)
    psi: (k - l) x dim h matrix, psi(A) in coordinates of `complement` (type 4)
    translations, complement: orthonormal bases of R^l and R^{k-l} (type 4;
    default: first l and last k - l coordinates)
    """

    kind: HolonomyKind
    k: int
    h: LieAlgebraSpan
    phi: Optional[np.ndarray] = None
    l: Optional[int] = None
    psi: Optional[np.ndarray] = None
    translations: Optional[np.ndarray] = None
    complement: Optional[np.ndarray] = None
    notes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind == HolonomyKind.TYPE_4 and self.l is not None and self.translations is None:
            T, W = first_coordinates(self.k, self.l)
            object.__setattr__(self, "translations", T)
            object.__setattr__(self, "complement", W)

    @property
    def is_known(self) -> bool:
        return self.kind != HolonomyKind.UNKNOWN

    def phi_of(self, A: np.ndarray) -> float:
        if self.phi is None or self.h.dim == 0:
            return 0.0
        return float(np.asarray(self.phi) @ self.h.coordinates(A))

    def psi_of(self, A: np.ndarray) -> np.ndarray:
        """psi(A) as a vector of R^k (inside the complement)."""
        if self.psi is None or self.h.dim == 0:
            return np.zeros(self.k)
        return self.complement @ (np.asarray(self.psi) @ self.h.coordinates(A))

    def validate(self, tol: float = TRIPLE_TOL) -> None:
        """
        Raises:
            DescriptorError: an invariant of the type is violated
        """
        h = self.h
        if h.ambient_dim != self.k:
            raise DescriptorError("h must act on R^k", {"k": self.k, "h_ambient": h.ambient_dim})
        for M in h.basis:
            if np.max(np.abs(M + M.T)) > tol:
                raise DescriptorError("h must consist of skew-symmetric matrices")
        if self.kind == HolonomyKind.UNKNOWN:
            raise DescriptorError("cannot build an algebra of unknown type")

        if self.kind == HolonomyKind.TYPE_3:
            phi = np.asarray(self.phi if self.phi is not None else [], dtype=float)
            if phi.shape != (h.dim,) or not np.any(np.abs(phi) > tol):
                raise DescriptorError("type 3 needs a nonzero phi given on the basis of h")
            if not annihilates_derived(h, phi, tol):
                raise DescriptorError("phi must vanish on the derived algebra of h")

        if self.kind == HolonomyKind.TYPE_4:
            l = self.l
            if l is None or not 0 <= l < self.k:
                raise DescriptorError("type 4 needs 0 <= l < k", {"l": l, "k": self.k})
            psi = np.asarray(self.psi if self.psi is not None else np.zeros((0, 0)), dtype=float)
            if psi.shape != (self.k - l, h.dim):
                raise DescriptorError("psi must be (k - l) x dim h", {"shape": list(psi.shape)})
            if np.linalg.matrix_rank(psi, tol=tol) != self.k - l:
                raise DescriptorError("psi must be surjective onto R^{k-l}")
            if not annihilates_derived(h, psi, tol):
                raise DescriptorError("psi must vanish on the derived algebra of h")
            W = self.complement
            for M in h.basis:
                if np.max(np.abs(M @ W), initial=0.0) > tol:
                    raise DescriptorError("h must act trivially on R^{k-l}")
            if center_dim(h, tol) < self.k - l:
                raise DescriptorError("dim z(h) must be at least k - l")

    def to_dict(self) -> dict:
        return {
            "type": self.kind.value,
            "k": self.k,
            "h_dim": self.h.dim,
            "h_basis": self.h.to_lists(),
            "phi": None if self.phi is None else np.asarray(self.phi).tolist(),
            "l": self.l,
            "psi": None if self.psi is None else np.asarray(self.psi).tolist(),
            "notes": list(self.notes),
        }


def make_type_triples(desc: HolonomyTypeDescriptor, tol: float = TRIPLE_TOL) -> List[SoTriple]:
    """Triple basis of the algebra described by desc."""
    desc.validate(tol)
    k = desc.k
    basis = list(desc.h.basis)
    kind = desc.kind

    if kind == HolonomyKind.TYPE_4:
        T, W = desc.translations, desc.complement
        psi = np.asarray(desc.psi, dtype=float)
        graph = [SoTriple(0.0, H, W @ psi[:, i]) for i, H in enumerate(basis)]
        return graph + [SoTriple.translation(T[:, j]) for j in range(T.shape[1])]

    translations = [SoTriple.translation(e) for e in np.eye(k)]
    if kind == HolonomyKind.TYPE_1:
        return [SoTriple.scalar(k)] + [SoTriple.rotation(H) for H in basis] + translations
    if kind == HolonomyKind.TYPE_2:
        return [SoTriple.rotation(H) for H in basis] + translations
    phi = np.asarray(desc.phi, dtype=float)
    return [SoTriple(phi[i], H, np.zeros(k)) for i, H in enumerate(basis)] + translations


def make_type(desc: HolonomyTypeDescriptor, tol: float = TRIPLE_TOL) -> LieAlgebraSpan:
    """
    Raises:
        DescriptorError: invalid descriptor, or the span is not bracket-closed
    """
    g = algebra_from_triples(make_type_triples(desc, tol), tol, desc.k)
    if not g.is_closed(tol * 100):
        raise DescriptorError("constructed algebra is not closed", {"type": desc.kind.value})
    logger.debug(f"type {desc.kind.value} algebra, k={desc.k}, dim {g.dim}")
    return g


# ============================================================================
# RECOGNITION
# ============================================================================


def _unknown(k: int, h: LieAlgebraSpan, reason: str) -> HolonomyTypeDescriptor:
    logger.info(f"algebra not recognised: {reason}")
    return HolonomyTypeDescriptor(HolonomyKind.UNKNOWN, k, h, notes=(reason,))


def recognize_type(g: LieAlgebraSpan, tol: float = TRIPLE_TOL) -> HolonomyTypeDescriptor:
    """
    Read the type from projections of g onto R, so(k) and R^k.

    Type 1 is tested before type 3: an element with a != 0 and A = 0 forces type 1.
    """
    k = g.ambient_dim - 2
    try:
        triples = triples_of(g, tol)
    except PreconditionError:
        return _unknown(k, LieAlgebraSpan(max(k, 0), (), tol), "not in so(1,k+1)_Rp block form")

    h = span_basis([t.A for t in triples], tol, k)
    if not triples:
        return _unknown(k, h, "zero algebra is not weakly irreducible")

    a = np.array([t.a for t in triples])
    A_flat = np.array([t.A.reshape(-1) for t in triples])
    Xs = np.array([t.X for t in triples])
    scale = max(1.0, float(np.max(np.abs(g.flat))))

    # pure translations: coefficient vectors killing a and A
    pure = null_space(np.column_stack([a, A_flat]).T, rcond=tol)
    T = orth(Xs.T @ pure, rcond=tol) if pure.shape[1] else np.zeros((k, 0))
    l = T.shape[1]

    rotation_free = null_space(A_flat.T, rcond=tol) if A_flat.size else np.eye(len(triples))
    a_free = bool(rotation_free.shape[1]) and float(np.max(np.abs(a @ rotation_free))) > tol * scale
    a_nonzero = float(np.max(np.abs(a))) > tol * scale
    coords = np.array([h.coordinates(t.A) for t in triples]) if h.dim else np.zeros((len(triples), 0))

    if l == k:
        if a_free:
            if g.dim != 1 + h.dim + k:
                return _unknown(k, h, "dimension does not match (R + h) x R^k")
            return HolonomyTypeDescriptor(HolonomyKind.TYPE_1, k, h)
        if not a_nonzero:
            if g.dim != h.dim + k:
                return _unknown(k, h, "dimension does not match h x R^k")
            return HolonomyTypeDescriptor(HolonomyKind.TYPE_2, k, h)
        phi, *_ = np.linalg.lstsq(coords, a, rcond=None)
        if np.max(np.abs(coords @ phi - a)) > tol * scale * 100:
            return _unknown(k, h, "a-part is not a function of the A-part")
        if not annihilates_derived(h, phi, tol * 100):
            return _unknown(k, h, "phi does not vanish on h'")
        return HolonomyTypeDescriptor(HolonomyKind.TYPE_3, k, h, phi=phi)

    if a_nonzero:
        return _unknown(k, h, "a-part present while translations are not all of R^k")
    if h.dim == 0:
        return _unknown(k, h, "translations are not all of R^k and h = 0")
    if g.dim != h.dim + l:
        return _unknown(k, h, "X-part is not determined by the A-part modulo R^l")

    W = np.eye(k) if l == 0 else null_space(T.T)
    Y = Xs @ W
    psi_t, *_ = np.linalg.lstsq(coords, Y, rcond=None)
    if np.max(np.abs(coords @ psi_t - Y)) > tol * scale * 100:
        return _unknown(k, h, "X-part is not a function of the A-part")
    psi = psi_t.T
    if np.linalg.matrix_rank(psi, tol=tol * 100) != k - l:
        return _unknown(k, h, "psi is not surjective")
    desc = HolonomyTypeDescriptor(HolonomyKind.TYPE_4, k, h, l=l, psi=psi, translations=T, complement=W)
    try:
        desc.validate(tol * 100)
    except DescriptorError as e:
        return _unknown(k, h, e.message)
    return desc
