"""Elements (a, A, X) of so(1,k+1)_{Rp} and their matrix realisation in a Witt basis."""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np
import sympy as sp

from src.algebra.lie_span import LieAlgebraSpan, bracket, span_basis
from src.errors import DimensionMismatchError, PreconditionError

TRIPLE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SoTriple:
    """
    Тройка (a, A, X): a - число, A - кососимметричная k x k, X - вектор R^k.

    Matrix form in the basis p, e_1, ..., e_k, q:
        ( a  X^T  0 )
        ( 0  A   -X )
        ( 0  0   -a )
    """

    a: float
    A: np.ndarray
    X: np.ndarray

    def __post_init__(self):
        X = np.array(self.X, dtype=float).reshape(-1)
        k = len(X)
        A = np.array(self.A, dtype=float)
        A = A.reshape(k, k) if A.size else np.zeros((k, k))
        if np.max(np.abs(A + A.T), initial=0.0) > TRIPLE_TOL:
            raise PreconditionError("A-part of a triple must be skew-symmetric")
        A.setflags(write=False)
        X.setflags(write=False)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "X", X)

    @property
    def k(self) -> int:
        return len(self.X)

    @classmethod
    def zero(cls, k: int) -> "SoTriple":
        return cls(0.0, np.zeros((k, k)), np.zeros(k))

    @classmethod
    def scalar(cls, k: int, a: float = 1.0) -> "SoTriple":
        return cls(a, np.zeros((k, k)), np.zeros(k))

    @classmethod
    def rotation(cls, A: np.ndarray) -> "SoTriple":
        A = np.asarray(A, dtype=float)
        return cls(0.0, A, np.zeros(A.shape[0]))

    @classmethod
    def translation(cls, X: Sequence[float]) -> "SoTriple":
        X = np.asarray(X, dtype=float)
        return cls(0.0, np.zeros((len(X), len(X))), X)

    def matrix(self) -> np.ndarray:
        k = self.k
        M = np.zeros((k + 2, k + 2))
        M[0, 0] = self.a
        M[0, 1:-1] = self.X
        M[1:-1, 1:-1] = self.A
        M[1:-1, -1] = -self.X
        M[-1, -1] = -self.a
        return M

    def exact_matrix(self) -> sp.Matrix:
        """Matrix form with entries converted to rationals."""
        return sp.Matrix(self.matrix().tolist()).applyfunc(lambda v: sp.nsimplify(v, rational=True))

    @classmethod
    def from_matrix(cls, M: np.ndarray, tol: float = TRIPLE_TOL) -> "SoTriple":
        """
        Raises:
            PreconditionError: M does not have the triple block form
        """
        M = np.asarray(M, dtype=float)
        if not is_triple_matrix(M, tol):
            raise PreconditionError("matrix is not in so(1,k+1)_Rp block form")
        return cls(M[0, 0], 0.5 * (M[1:-1, 1:-1] - M[1:-1, 1:-1].T), M[0, 1:-1])

    def __add__(self, other: "SoTriple") -> "SoTriple":
        return SoTriple(self.a + other.a, self.A + other.A, self.X + other.X)

    def scale(self, factor: float) -> "SoTriple":
        return SoTriple(factor * self.a, factor * self.A, factor * self.X)

    def coordinates(self) -> np.ndarray:
        """(a, A_ij for i < j, X) - coordinates orthogonal for the three summands."""
        iu = np.triu_indices(self.k, 1)
        return np.concatenate([[self.a], np.sqrt(2.0) * self.A[iu], self.X])

    def is_close(self, other: "SoTriple", tol: float = TRIPLE_TOL) -> bool:
        return bool(np.max(np.abs(self.matrix() - other.matrix())) <= tol)

    def to_dict(self) -> dict:
        return {"a": self.a, "A": self.A.tolist(), "X": self.X.tolist()}


def is_triple_matrix(M: np.ndarray, tol: float = TRIPLE_TOL) -> bool:
    """M stabilises Rp and has the so(1,k+1) block form."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 2:
        return False
    inner = M[1:-1, 1:-1]
    checks = [
        np.abs(M[1:, 0]),
        np.abs(M[-1, :-1]),
        [abs(M[0, -1])],
        [abs(M[-1, -1] + M[0, 0])],
        np.abs(M[1:-1, -1] + M[0, 1:-1]),
        np.abs(inner + inner.T).reshape(-1),
    ]
    return all(np.max(np.asarray(c, dtype=float), initial=0.0) <= tol for c in checks)


def triple_bracket(t1: SoTriple, t2: SoTriple) -> SoTriple:
    """Commutator in the matrix realisation, read back as a triple."""
    if t1.k != t2.k:
        raise DimensionMismatchError("triples of different size", {"left": t1.k, "right": t2.k})
    return SoTriple.from_matrix(bracket(t1.matrix(), t2.matrix()))


def algebra_from_triples(triples: Iterable[SoTriple], tol: float = TRIPLE_TOL, k: Optional[int] = None) -> LieAlgebraSpan:
    triples = list(triples)
    k = triples[0].k if triples else (k or 0)
    return span_basis([t.matrix() for t in triples], tol, k + 2)


def triples_of(g: LieAlgebraSpan, tol: float = TRIPLE_TOL) -> List[SoTriple]:
    """Basis of g read as triples."""
    return [SoTriple.from_matrix(M, tol) for M in g.basis]
