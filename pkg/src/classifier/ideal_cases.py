"""
Codimension-one ideals of weakly irreducible algebras: case labels 1.1 - 4.3.

An ideal I of codimension one is read through the element alpha of g that is
orthogonal to I in the triple coordinates (a, sqrt(2) A_{i<j}, X); the three
summands are orthogonal there, so alpha = (a, alpha_A, alpha_X) splits cleanly.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import null_space

from src.algebra.ideals import codim, codim1_ideals_oracle, derived_algebra, is_ideal
from src.algebra.lie_span import LieAlgebraSpan, complement_in, span_basis
from src.classifier.decomposition import common_kernel
from src.classifier.triples import TRIPLE_TOL, SoTriple, algebra_from_triples, triples_of
from src.classifier.types import HolonomyTypeDescriptor, recognize_type
from src.errors import ClassificationFailure, PreconditionError
from src.models.enums import HolonomyKind, IdealCase


@dataclass(frozen=True)
class IdealCaseLabel:
    case: IdealCase
    witness: dict = field(default_factory=dict)

    @property
    def type_number(self) -> int:
        return self.case.type_number

    def to_dict(self) -> dict:
        return {"case": self.case.value, "witness": self.witness}


def _zero(tol: float) -> float:
    # alpha is normalised, its components are O(1) unless they vanish
    return float(np.sqrt(tol))


def _triple_from_coordinates(c: np.ndarray, k: int) -> SoTriple:
    A = np.zeros((k, k))
    iu = np.triu_indices(k, 1)
    A[iu] = c[1:1 + len(iu[0])] / np.sqrt(2.0)
    A = A - A.T
    return SoTriple(c[0], A, c[-k:] if k else np.zeros(0))


def orthogonal_element(g_triples: List[SoTriple], I_triples: List[SoTriple], k: int) -> SoTriple:
    """Unit element of g orthogonal to I (I of codimension one)."""
    G = np.array([t.coordinates() for t in g_triples]).T
    Q, _ = np.linalg.qr(G)
    Q = Q[:, : len(g_triples)]
    if I_triples:
        B = np.array([t.coordinates() for t in I_triples])
        y = null_space(B @ Q)[:, 0]
    else:
        y = np.zeros(Q.shape[1])
        y[0] = 1.0
    c = Q @ y
    return _triple_from_coordinates(c / np.linalg.norm(c), k)


def a_projection_trivial(I_triples: List[SoTriple], tol: float) -> bool:
    return all(abs(t.a) <= tol for t in I_triples)


def rotation_part(I_triples: List[SoTriple], k: int, tol: float) -> LieAlgebraSpan:
    return span_basis([t.A for t in I_triples], tol, k)


def contains_translations(I: LieAlgebraSpan, vectors: np.ndarray, tol: float) -> bool:
    return all(I.contains(SoTriple.translation(v).matrix(), tol) for v in vectors.T)


def _fail(g_type: str, reason: str, details: Optional[dict] = None) -> ClassificationFailure:
    logger.error(f"codimension-one ideal of a type {g_type} algebra fits no case: {reason}")
    return ClassificationFailure(f"ideal fits no case: {reason}", {"type": g_type, **(details or {})})


def _values_on(h: LieAlgebraSpan, f) -> List[float]:
    return [float(f(H)) for H in h.basis]


# ============================================================================
# CLASSIFICATION
# ============================================================================


def classify_codim1_ideal(
    g: LieAlgebraSpan,
    I: LieAlgebraSpan,
    tol: float = TRIPLE_TOL,
    descriptor: Optional[HolonomyTypeDescriptor] = None,
) -> IdealCaseLabel:
    """
    Raises:
        PreconditionError: g not recognised, or I not an ideal of codimension one
        ClassificationFailure: no case matches
    """
    desc = descriptor or recognize_type(g, tol)
    if not desc.is_known:
        raise PreconditionError("algebra type not recognised", {"notes": list(desc.notes)})
    if I.ambient_dim != g.ambient_dim or not g.contains_span(I, tol * 100):
        raise PreconditionError("subspace is not contained in the algebra")
    if codim(I, g, tol * 100) != 1 or not is_ideal(I, g, tol * 100):
        raise PreconditionError("not an ideal of codimension one", {"dim_I": I.dim, "dim_g": g.dim})

    k = desc.k
    h = desc.h
    zero = _zero(tol)
    g_triples = triples_of(g, tol)
    I_triples = triples_of(I, tol)
    alpha = orthogonal_element(g_triples, I_triples, k)
    kind = desc.kind.value
    logger.debug(f"alpha = ({alpha.a:.3g}, |A| {np.linalg.norm(alpha.A):.3g}, |X| {np.linalg.norm(alpha.X):.3g})")

    if desc.kind in (HolonomyKind.TYPE_1, HolonomyKind.TYPE_3):
        full = np.eye(k)
        a_trivial = a_projection_trivial(I_triples, zero)
        if not contains_translations(I, full, zero):
            raise _fail(kind, "R^k is not inside the ideal")
        I_1 = rotation_part(I_triples, k, tol)

        if desc.kind == HolonomyKind.TYPE_1:
            if a_trivial:
                return IdealCaseLabel(IdealCase.CASE_1_1, {"I1_dim": I_1.dim})
            if I.contains(SoTriple.scalar(k).matrix(), zero):
                if I_1.dim != h.dim - 1:
                    raise _fail(kind, "rotation part is not a hyperplane of h")
                return IdealCaseLabel(IdealCase.CASE_1_2, {"I1_dim": I_1.dim, "I1_basis": I_1.to_lists()})
            coords = np.array([h.coordinates(t.A) for t in I_triples])
            a = np.array([t.a for t in I_triples])
            phi, *_ = np.linalg.lstsq(coords, a, rcond=None)
            if np.max(np.abs(coords @ phi - a)) > zero or not np.any(np.abs(phi) > zero):
                raise _fail(kind, "a-part is not a nonzero function of the rotation part")
            return IdealCaseLabel(IdealCase.CASE_1_3, {"phi": phi.tolist()})

        if a_trivial:
            return IdealCaseLabel(IdealCase.CASE_3_1, {"I1_dim": I_1.dim, "I1_basis": I_1.to_lists()})
        phi_1 = _values_on(I_1, desc.phi_of)
        if I_1.dim != h.dim - 1 or not np.any(np.abs(phi_1) > zero):
            raise _fail(kind, "rotation part is not a hyperplane with phi nonzero on it")
        return IdealCaseLabel(IdealCase.CASE_3_2, {"I1_dim": I_1.dim, "phi1": phi_1})

    if abs(alpha.a) > zero:
        raise _fail(kind, "orthogonal element has an a-part", {"a": alpha.a})
    alpha_A, alpha_X = alpha.A, alpha.X
    norm_A = float(np.linalg.norm(alpha_A))

    if desc.kind == HolonomyKind.TYPE_2:
        K0 = common_kernel(list(h.basis), k, tol)
        off = alpha_X - K0 @ (K0.T @ alpha_X)
        if np.linalg.norm(off) > zero:
            raise _fail(kind, "X-part of alpha leaves the fixed subspace R^{k_0}", {"k0": K0.shape[1]})
        norm_X = float(np.linalg.norm(alpha_X))
        if norm_A <= zero:
            u = alpha_X / norm_X
            return IdealCaseLabel(IdealCase.CASE_2_1, {"fixed_vector": u.tolist(), "k0": K0.shape[1]})
        if norm_X <= zero:
            return IdealCaseLabel(IdealCase.CASE_2_2, {"I1_dim": h.dim - 1, "I1_basis": _kernel_of(h, alpha_A).to_lists()})
        u = alpha_X / norm_X
        psi = _values_on(h, lambda A: -float(np.sum(alpha_A * A)) / norm_X)
        return IdealCaseLabel(IdealCase.CASE_2_3, {"fixed_vector": u.tolist(), "psi": psi})

    # type 4
    T, W = desc.translations, desc.complement
    l = T.shape[1]
    kernel_in_T = common_kernel([T.T @ H @ T for H in h.basis], l, tol)
    K0 = T @ kernel_in_T
    tau = T @ (T.T @ alpha_X)
    off = tau - K0 @ (K0.T @ tau) if K0.shape[1] else tau
    if np.linalg.norm(off) > zero:
        raise _fail(kind, "translation part of alpha leaves R^{l_0}", {"l0": K0.shape[1]})
    norm_tau = float(np.linalg.norm(tau))
    if norm_A <= zero:
        u = tau / norm_tau
        return IdealCaseLabel(IdealCase.CASE_4_1, {"fixed_vector": u.tolist(), "l0": K0.shape[1]})
    if norm_tau <= zero:
        return IdealCaseLabel(IdealCase.CASE_4_2, {"I1_dim": h.dim - 1, "I1_basis": _kernel_of(h, alpha_A).to_lists()})

    # R^{k-l+1} = R^{k-l} + R u, orthogonal
    u = tau / norm_tau
    psi_alpha = W.T @ desc.psi_of(alpha_A)
    psi = np.array([W.T @ desc.psi_of(H) for H in h.basis]).T
    t = np.array([-(float(np.sum(alpha_A * H)) + float(psi_alpha @ psi[:, i])) / norm_tau for i, H in enumerate(h.basis)])
    psi_1 = np.vstack([psi, t[None, :]])
    return IdealCaseLabel(
        IdealCase.CASE_4_3,
        {
            "fixed_vector": u.tolist(),
            "psi1": psi_1.tolist(),
            "splitting": "orthogonal: complement of R^l, then the fixed vector",
            "surjective": bool(np.linalg.matrix_rank(psi_1, tol=zero) == psi_1.shape[0]),
        },
    )


def _kernel_of(h: LieAlgebraSpan, alpha_A: np.ndarray) -> LieAlgebraSpan:
    """{A in h : <alpha_A, A> = 0}."""
    values = np.array([[float(np.sum(alpha_A * H)) for H in h.basis]])
    kernel = null_space(values)
    return span_basis([sum(c * H for c, H in zip(col, h.basis)) for col in kernel.T], h.tol, h.ambient_dim)


# ============================================================================
# REPRESENTATIVES
# ============================================================================


def _abelianisation_functionals(h: LieAlgebraSpan) -> List[np.ndarray]:
    """Functionals on h.basis vanishing on h', one per direction of h / h'."""
    if h.dim == 0:
        return []
    directions = complement_in(derived_algebra(h), h)
    return [np.array([float(np.sum(C * H)) for H in h.basis]) for C in directions]


def _h_hyperplane_ideals(h: LieAlgebraSpan) -> List[LieAlgebraSpan]:
    if h.dim == 0:
        return []
    return list(codim1_ideals_oracle(h).representatives)


def _orthogonal_in(basis: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Columns of `basis` span a space containing u; returns its part orthogonal to u."""
    return basis @ null_space((basis.T @ u)[None, :])


def codim1_ideal_representatives(
    g: LieAlgebraSpan,
    tol: float = TRIPLE_TOL,
    descriptor: Optional[HolonomyTypeDescriptor] = None,
) -> List[Tuple[IdealCaseLabel, LieAlgebraSpan]]:
    """
    One representative ideal per case realisable for g, each labelled by
    classify_codim1_ideal.

    Raises:
        PreconditionError: g not recognised
    """
    desc = descriptor or recognize_type(g, tol)
    if not desc.is_known:
        raise PreconditionError("algebra type not recognised", {"notes": list(desc.notes)})
    k, h = desc.k, desc.h
    basis = list(h.basis)
    rotations = [SoTriple.rotation(H) for H in basis]
    translations = [SoTriple.translation(e) for e in np.eye(k)]
    functionals = _abelianisation_functionals(h)
    hyperplanes = _h_hyperplane_ideals(h)
    candidates: List[Tuple[IdealCase, List[SoTriple]]] = []

    if desc.kind == HolonomyKind.TYPE_1:
        candidates.append((IdealCase.CASE_1_1, rotations + translations))
        if hyperplanes:
            I_1 = hyperplanes[0]
            candidates.append(
                (IdealCase.CASE_1_2, [SoTriple.scalar(k)] + [SoTriple.rotation(M) for M in I_1.basis] + translations)
            )
        if functionals:
            phi = functionals[0]
            candidates.append(
                (IdealCase.CASE_1_3, [SoTriple(phi[i], H, np.zeros(k)) for i, H in enumerate(basis)] + translations)
            )

    elif desc.kind == HolonomyKind.TYPE_2:
        K0 = common_kernel(basis, k, tol)
        if K0.shape[1]:
            u = K0[:, 0]
            rest = [SoTriple.translation(v) for v in _orthogonal_in(np.eye(k), u).T]
            candidates.append((IdealCase.CASE_2_1, rotations + rest))
            if functionals:
                phi = functionals[0]
                candidates.append(
                    (IdealCase.CASE_2_3, [SoTriple(0.0, H, phi[i] * u) for i, H in enumerate(basis)] + rest)
                )
        if hyperplanes:
            candidates.append((IdealCase.CASE_2_2, [SoTriple.rotation(M) for M in hyperplanes[0].basis] + translations))

    elif desc.kind == HolonomyKind.TYPE_3:
        phi = np.asarray(desc.phi, dtype=float)
        kernel = null_space(phi[None, :])
        ker_phi = [sum(c * H for c, H in zip(col, basis)) for col in kernel.T]
        candidates.append((IdealCase.CASE_3_1, [SoTriple.rotation(M) for M in ker_phi] + translations))
        for I_1 in hyperplanes:
            if any(abs(desc.phi_of(M)) > _zero(tol) for M in I_1.basis):
                graph = [SoTriple(desc.phi_of(M), M, np.zeros(k)) for M in I_1.basis]
                candidates.append((IdealCase.CASE_3_2, graph + translations))
                break

    else:
        T, W = desc.translations, desc.complement
        l = T.shape[1]
        K0 = T @ common_kernel([T.T @ H @ T for H in basis], l, tol)
        graph = [SoTriple(0.0, H, desc.psi_of(H)) for H in basis]
        all_T = [SoTriple.translation(v) for v in T.T]
        if K0.shape[1]:
            u = K0[:, 0]
            rest = [SoTriple.translation(v) for v in _orthogonal_in(T, u).T]
            candidates.append((IdealCase.CASE_4_1, graph + rest))
            psi = np.asarray(desc.psi, dtype=float)
            for f in functionals:
                if np.linalg.matrix_rank(np.vstack([psi, f[None, :]]), tol=_zero(tol)) == psi.shape[0] + 1:
                    twisted = [SoTriple(0.0, H, desc.psi_of(H) + f[i] * u) for i, H in enumerate(basis)]
                    candidates.append((IdealCase.CASE_4_3, twisted + rest))
                    break
        if hyperplanes:
            I_1 = hyperplanes[0]
            candidates.append(
                (IdealCase.CASE_4_2, [SoTriple(0.0, M, desc.psi_of(M)) for M in I_1.basis] + all_T)
            )

    result = []
    for intended, triples in candidates:
        I = algebra_from_triples(triples, tol, k)
        if codim(I, g, tol * 100) != 1 or not is_ideal(I, g, tol * 100):
            logger.warning(f"representative for case {intended.value} is not a codimension-one ideal, skipped")
            continue
        label = classify_codim1_ideal(g, I, tol, desc)
        if label.case != intended:
            logger.warning(f"representative built for {intended.value} classified as {label.case.value}")
        result.append((label, I))

    result.sort(key=lambda item: item[0].case.value)
    logger.info(f"type {desc.kind.value} algebra: {len(result)} codimension-one ideal representatives")
    return result
