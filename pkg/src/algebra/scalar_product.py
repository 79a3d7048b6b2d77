"""Indefinite scalar products, bivectors and the form/bivector pairing."""

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np
import sympy as sp
from loguru import logger

from src.errors import DimensionMismatchError, MetricDegeneracyError

# Bivector -> endomorphism: (X^Y)Z = g(X,Z)Y - g(Y,Z)X, so a coefficient
# array B acts as WEDGE_SIGN * B * G.
WEDGE_SIGN = -1

# c in  <omega, B> = c * sum_{a,b} omega(E_a, E_b) B^{ab}.
PAIRING_CONSTANT = 1

# (d theta)^{-1} = DTHETA_INVERSE_SCALE * Omega^{-1}, Omega = frame matrix of d theta.
DTHETA_INVERSE_SCALE = 2

MatrixLike = Union[sp.MatrixBase, np.ndarray]


def _as_rational_matrix(rows: Iterable[Sequence]) -> sp.ImmutableMatrix:
    return sp.ImmutableMatrix([[sp.Rational(v) for v in row] for row in rows])


@dataclass(frozen=True)
class ScalarProductSpace:
    """Пространство с невырожденным (возможно индефинитным) скалярным произведением."""

    gram: sp.ImmutableMatrix

    def __post_init__(self):
        gram = self.gram
        if not isinstance(gram, sp.ImmutableMatrix):
            gram = _as_rational_matrix(gram.tolist() if hasattr(gram, "tolist") else gram)
            object.__setattr__(self, "gram", gram)
        if gram.rows != gram.cols:
            raise DimensionMismatchError("gram matrix is not square", {"shape": list(gram.shape)})
        if gram != gram.T:
            raise MetricDegeneracyError("gram matrix is not symmetric")
        if gram.det() == 0:
            raise MetricDegeneracyError("gram matrix is degenerate", {"dim": gram.rows})

    @property
    def dim(self) -> int:
        return self.gram.rows

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "ScalarProductSpace":
        return cls(_as_rational_matrix(rows))

    @classmethod
    def witt(cls, k: int) -> "ScalarProductSpace":
        """R^{1,k+1} in the Witt basis p, e_1, ..., e_k, q."""
        gram = sp.zeros(k + 2, k + 2)
        gram[0, k + 1] = gram[k + 1, 0] = 1
        for i in range(1, k + 1):
            gram[i, i] = 1
        return cls(sp.ImmutableMatrix(gram))

    def signature(self) -> tuple:
        """(p, q) = (число положительных, число отрицательных) собственных значений."""
        eigs = np.linalg.eigvalsh(self.as_array())
        return int(np.sum(eigs > 0)), int(np.sum(eigs < 0))

    def as_array(self) -> np.ndarray:
        return np.array(self.gram.tolist(), dtype=float)


@dataclass(frozen=True)
class Bivector:
    """B = sum_{a<b} B^{ab} E_a ^ E_b, stored as the antisymmetric array B^{ab}."""

    coeffs: sp.ImmutableMatrix

    def __post_init__(self):
        coeffs = self.coeffs
        if not isinstance(coeffs, sp.ImmutableMatrix):
            coeffs = sp.ImmutableMatrix(coeffs)
            object.__setattr__(self, "coeffs", coeffs)
        if coeffs.rows != coeffs.cols:
            raise DimensionMismatchError("bivector array is not square", {"shape": list(coeffs.shape)})
        if coeffs != -coeffs.T:
            raise ValueError("bivector coefficients must be antisymmetric")

    @property
    def dim(self) -> int:
        return self.coeffs.rows

    @classmethod
    def zero(cls, dim: int) -> "Bivector":
        return cls(sp.ImmutableMatrix(sp.zeros(dim, dim)))

    @classmethod
    def wedge(cls, a: int, b: int, dim: int) -> "Bivector":
        """E_a ^ E_b (0-based indices)."""
        coeffs = sp.zeros(dim, dim)
        coeffs[a, b] += 1
        coeffs[b, a] -= 1
        return cls(sp.ImmutableMatrix(coeffs))

    def __add__(self, other: "Bivector") -> "Bivector":
        if other.dim != self.dim:
            raise DimensionMismatchError("bivector dimensions differ", {"left": self.dim, "right": other.dim})
        return Bivector(self.coeffs + other.coeffs)

    def __sub__(self, other: "Bivector") -> "Bivector":
        return self + other.scale(-1)

    def scale(self, factor) -> "Bivector":
        return Bivector(self.coeffs * sp.Rational(factor))

    def __rmul__(self, factor) -> "Bivector":
        return self.scale(factor)


def bivector_to_endo(B: Bivector, V: ScalarProductSpace) -> sp.ImmutableMatrix:
    """
    g-кососимметричный эндоморфизм бивектора.

    (X^Y)Z = g(X,Z)Y - g(Y,Z)X, bilinearly extended; exact rational result.

    Raises:
        DimensionMismatchError: B and V live in different dimensions
    """
    if B.dim != V.dim:
        raise DimensionMismatchError("bivector and scalar product dimensions differ", {"bivector": B.dim, "space": V.dim})
    return sp.ImmutableMatrix(WEDGE_SIGN * B.coeffs * V.gram)


def endo_to_bivector(M: sp.MatrixBase, V: ScalarProductSpace) -> Bivector:
    """Inverse of bivector_to_endo on g-skew endomorphisms."""
    if M.rows != V.dim:
        raise DimensionMismatchError("endomorphism and scalar product dimensions differ", {"endo": M.rows, "space": V.dim})
    return Bivector(sp.ImmutableMatrix(WEDGE_SIGN * M * V.gram.inv()))


def endo_from_coeffs(coeffs: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """Float version of bivector_to_endo for transported/numeric data."""
    coeffs = np.asarray(coeffs, dtype=float)
    gram = np.asarray(gram, dtype=float)
    if coeffs.shape != gram.shape:
        raise DimensionMismatchError("bivector and gram shapes differ", {"bivector": coeffs.shape, "gram": gram.shape})
    return WEDGE_SIGN * coeffs @ gram


def pair_form_bivector(omega: MatrixLike, B: Union[Bivector, MatrixLike]):
    """
    Pairing of a two-form (frame values omega(E_a, E_b)) with a bivector.

    Returns PAIRING_CONSTANT * sum_{a,b} omega_ab B^ab; exact when both inputs are exact.

    Raises:
        DimensionMismatchError: shapes differ
    """
    coeffs = B.coeffs if isinstance(B, Bivector) else B
    if isinstance(omega, np.ndarray) or isinstance(coeffs, np.ndarray):
        omega_arr = np.asarray(omega.tolist() if isinstance(omega, sp.MatrixBase) else omega, dtype=float)
        coeffs_arr = np.asarray(coeffs.tolist() if isinstance(coeffs, sp.MatrixBase) else coeffs, dtype=float)
        if omega_arr.shape != coeffs_arr.shape:
            raise DimensionMismatchError("form and bivector shapes differ")
        return PAIRING_CONSTANT * float(np.sum(omega_arr * coeffs_arr))

    omega_m = sp.Matrix(omega)
    coeffs_m = sp.Matrix(coeffs)
    if omega_m.shape != coeffs_m.shape:
        raise DimensionMismatchError(
            "form and bivector shapes differ", {"form": list(omega_m.shape), "bivector": list(coeffs_m.shape)}
        )
    total = sum(omega_m[a, b] * coeffs_m[a, b] for a in range(omega_m.rows) for b in range(omega_m.cols))
    return sp.nsimplify(PAIRING_CONSTANT * total) if total != 0 else sp.Integer(0)


def bivector_basis(dim: int) -> list:
    """All E_a ^ E_b with a < b, in lexicographic order."""
    return [Bivector.wedge(a, b, dim) for a in range(dim) for b in range(a + 1, dim)]


def is_skew(M: MatrixLike, gram: MatrixLike, tol: float = 0.0) -> bool:
    """G^T M + M^T G == 0 (exactly for sympy input, up to tol for floats)."""
    if isinstance(M, sp.MatrixBase) and isinstance(gram, sp.MatrixBase):
        return (gram.T * M + M.T * gram).is_zero_matrix
    M = np.asarray(M, dtype=float)
    G = np.asarray(gram, dtype=float)
    defect = np.max(np.abs(G.T @ M + M.T @ G)) if M.size else 0.0
    if defect > tol:
        logger.debug(f"skewness defect {defect:.3e} above {tol:.1e}")
    return bool(defect <= tol)
