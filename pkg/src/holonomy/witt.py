"""
Invariant null lines, Witt bases and orthogonal parts of Lorentzian algebras.

For an algebra A acting on (R^{k+2}, G) and preserving a null line Rp, the
Witt basis p, e_1, ..., e_k, q (g(p, q) = 1, e_i orthonormal and orthogonal
to p and q) brings every element to the block form

    ( a   X^T   0 )
    ( 0   A    -X )
    ( 0   0    -a )

and the middle blocks span the orthogonal part of A.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from loguru import logger
from scipy.linalg import eigh, null_space

from src.algebra.lie_span import LieAlgebraSpan, span_basis
from src.errors import DimensionMismatchError, MetricDegeneracyError, PreconditionError

NULL_TOL = 1e-8


@dataclass(frozen=True)
class WittBasis:
    """
    Базис Витта p, e_1, ..., e_k, q (столбцы matrix) и знак метрики.

    sign = -1 when the gram has a single positive direction; the basis is then
    Witt for -G.
    """

    matrix: np.ndarray
    sign: int = 1

    @property
    def k(self) -> int:
        return self.matrix.shape[1] - 2

    @property
    def p(self) -> np.ndarray:
        return self.matrix[:, 0]

    @property
    def q(self) -> np.ndarray:
        return self.matrix[:, -1]

    @property
    def screen(self) -> np.ndarray:
        return self.matrix[:, 1:-1]


def _lorentz_sign(G: np.ndarray) -> int:
    eigs = np.linalg.eigvalsh(G)
    negative, positive = int(np.sum(eigs < 0)), int(np.sum(eigs > 0))
    if negative == 1 and positive >= 1:
        return 1
    if positive == 1 and negative >= 1:
        return -1
    raise PreconditionError("scalar product is not Lorentzian", {"positive": positive, "negative": negative})


def _normalise(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    pivot = int(np.argmax(np.abs(v)))
    return v if v[pivot] > 0 else -v


def _is_null(v: np.ndarray, G: np.ndarray, tol: float) -> bool:
    return abs(float(v @ G @ v)) <= tol * float(v @ v) * max(np.max(np.abs(G)), 1.0)


def _preserves_line(mats: List[np.ndarray], v: np.ndarray, tol: float) -> bool:
    for M in mats:
        w = M @ v
        rest = w - (v @ w) / (v @ v) * v
        if np.linalg.norm(rest) > tol * max(np.linalg.norm(M), 1.0) * np.linalg.norm(v):
            return False
    return True


def _null_vector_in(K: np.ndarray, G: np.ndarray, tol: float) -> Optional[np.ndarray]:
    """Null vector inside the column span of K, if G restricted there admits one."""
    Gk = K.T @ G @ K
    values, vectors = eigh(Gk)
    scale = max(np.max(np.abs(values)), 1.0)
    zero = [i for i, val in enumerate(values) if abs(val) <= tol * scale]
    if zero:
        return K @ vectors[:, zero[0]]
    positive = [i for i, val in enumerate(values) if val > 0]
    negative = [i for i, val in enumerate(values) if val < 0]
    if positive and negative:
        i, j = positive[0], negative[0]
        combo = vectors[:, i] / np.sqrt(values[i]) + vectors[:, j] / np.sqrt(-values[j])
        return K @ combo
    return None


def stabilized_null_line(
    A: LieAlgebraSpan, gram: np.ndarray, tol: float = NULL_TOL, seed: int = 0
) -> Optional[np.ndarray]:
    """
    Null vector p with M p in Rp for every M in A, or None.

    First the common kernel of A is searched for a null vector (the case of
    holonomy algebras with a parallel null field); otherwise one-dimensional
    real eigenspaces of a random element of A are tested.
    """
    G = np.asarray(gram, dtype=float)
    if G.shape != (A.ambient_dim, A.ambient_dim):
        raise DimensionMismatchError("gram and algebra dimensions differ", {"gram": list(G.shape), "algebra": A.ambient_dim})
    _lorentz_sign(G)
    mats = [np.asarray(M) for M in A.basis]
    n = A.ambient_dim

    kernel = null_space(np.vstack(mats), rcond=tol) if mats else np.eye(n)
    if kernel.shape[1]:
        p = _null_vector_in(kernel, G, tol)
        if p is not None:
            logger.debug(f"null line found in the common kernel (dim {kernel.shape[1]})")
            return _normalise(p)

    if not mats:
        return None
    rng = np.random.default_rng(seed)
    combo = sum(c * M for c, M in zip(rng.standard_normal(len(mats)), mats))
    values, vectors = np.linalg.eig(combo)
    for i, lam in enumerate(values):
        if abs(lam.imag) > tol:
            continue
        eigenspace = null_space(combo - lam.real * np.eye(n), rcond=1e-7)
        if eigenspace.shape[1] != 1:
            continue
        v = eigenspace[:, 0]
        if _is_null(v, G, tol * 10) and _preserves_line(mats, v, 1e-7):
            return _normalise(v)

    logger.info("no invariant null line: algebra may act irreducibly")
    return None


def witt_basis(p: np.ndarray, gram: np.ndarray) -> WittBasis:
    """
    Complete a null vector p to a Witt basis.

    Raises:
        MetricDegeneracyError: p is not null or the screen is not definite
    """
    G = np.asarray(gram, dtype=float)
    sign = _lorentz_sign(G)
    Gs = sign * G
    p = np.asarray(p, dtype=float)
    if not _is_null(p, Gs, NULL_TOL * 10):
        raise MetricDegeneracyError("vector is not null", {"g(p,p)": float(p @ Gs @ p)})

    Gp = Gs @ p
    w = Gp / float(Gp @ Gp)
    q = w - 0.5 * float(w @ Gs @ w) * p

    N = null_space(np.vstack([p @ Gs, q @ Gs]))
    screen_gram = N.T @ Gs @ N
    values, vectors = eigh(screen_gram)
    if np.any(values <= 0):
        raise MetricDegeneracyError("screen is not positive definite", {"eigenvalues": values.tolist()})
    E = N @ vectors @ np.diag(values ** -0.5)
    return WittBasis(matrix=np.column_stack([p, E, q]), sign=sign)


def to_witt_form(A: LieAlgebraSpan, p: np.ndarray, gram: np.ndarray) -> LieAlgebraSpan:
    """A conjugated into the Witt basis built on p."""
    return A.conjugate(witt_basis(p, gram).matrix)


def orthogonal_part(A_witt: LieAlgebraSpan, tol: Optional[float] = None) -> LieAlgebraSpan:
    """Span of the middle k x k blocks of an algebra in Witt form."""
    k = A_witt.ambient_dim - 2
    blocks = [np.asarray(M)[1:-1, 1:-1] for M in A_witt.basis]
    return span_basis(blocks, A_witt.tol if tol is None else tol, k)


def screen_algebra(A: LieAlgebraSpan, p: np.ndarray, gram: np.ndarray, tol: Optional[float] = None) -> LieAlgebraSpan:
    """
    Induced action of A on p^perp / p, as g(M e_i, e_j) in an orthonormal screen.

    Does not go through the Witt conjugation, so it cross-checks orthogonal_part.
    """
    basis = witt_basis(p, gram)
    Gs = basis.sign * np.asarray(gram, dtype=float)
    E = basis.screen
    blocks = [E.T @ Gs @ np.asarray(M) @ E for M in A.basis]
    return span_basis(blocks, A.tol if tol is None else tol, basis.k)
