"""Schouten curvature, (d theta)^{-1} and the Wagner endomorphism."""

from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import null_space

from src.algebra.scalar_product import DTHETA_INVERSE_SCALE, PAIRING_CONSTANT
from src.chart.matrices import (
    FunctionMatrix,
    RationalMatrix,
    fmat_inv,
    fmat_is_zero,
    fmat_scale,
    fmat_zeros,
)
from src.chart.numeric import LambdifiedArray
from src.contact.connection import ConnectionCoeffs, horizontal_connection
from src.contact.structure import ContactStructure
from src.errors import NotContactError

Pair = Tuple[int, int]


class CurvatureMap:
    """
    R(E_a, E_b) as endomorphisms of D for a < b; other pairs by antisymmetry.

    matrix[e][c] = component e of R(E_a, E_b) E_c.
    """

    def __init__(self, structure: ContactStructure, values: Dict[Pair, FunctionMatrix]):
        self.structure = structure
        self.rank = structure.rank
        self._values = dict(values)

    @property
    def pairs(self) -> List[Pair]:
        return [(a, b) for a in range(self.rank) for b in range(a + 1, self.rank)]

    def __call__(self, a: int, b: int) -> FunctionMatrix:
        if a == b:
            return fmat_zeros(self.structure.chart, self.rank, self.rank)
        if a < b:
            return self._values[(a, b)]
        return fmat_scale(self._values[(b, a)], -self.structure.chart.one)

    def nonzero_pairs(self) -> List[Pair]:
        return [p for p in self.pairs if not fmat_is_zero(self._values[p])]

    def is_zero(self) -> bool:
        return not self.nonzero_pairs()

    def table(self) -> List[dict]:
        """Nonzero entries, emitted as text (report format)."""
        chart = self.structure.chart
        rows = []
        for a, b in self.nonzero_pairs():
            M = self._values[(a, b)]
            rows.append(
                {
                    "pair": [a, b],
                    "matrix": [[chart.emit(x) for x in row] for row in M],
                }
            )
        return rows

    @cached_property
    def numeric(self) -> LambdifiedArray:
        """(pairs, rank, rank) float evaluator, pairs in lexicographic order."""
        return LambdifiedArray(self.structure.chart, [self._values[p] for p in self.pairs])

    def bivector_at(self, x: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        """sum_{a,b} B^{ab} R_x(E_a, E_b) for a float bivector array."""
        return self.bivectors_at(x, [coeffs])[0]

    def bivectors_at(self, x: np.ndarray, bivectors: List[np.ndarray]) -> List[np.ndarray]:
        if not bivectors:
            return []
        values = self.numeric(x)
        weights = np.array([[B[a, b] - B[b, a] for a, b in self.pairs] for B in bivectors])
        return list(np.einsum("kp,pij->kij", weights, values))


def schouten_curvature(S: ContactStructure, conn: Optional[ConnectionCoeffs] = None) -> CurvatureMap:
    """
    R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{pi[X,Y]} Z - pi[pi'[X,Y], Z]
    on frame fields.

    In frame matrices: R_ab = E_a(G_b) - E_b(G_a) + G_a G_b - G_b G_a
        - sum_d c^d_ab G_d - theta([E_a,E_b]) L, with L[e][c] = (pi[xi, E_c])^e.

    For an extended connection L is replaced by its Reeb matrix G_xi, which gives
    R^N(X,Y) = R^g(X,Y) + d theta(X,Y) N on horizontal pairs.
    """
    conn = conn or horizontal_connection(S)
    chart = S.chart
    frame = S.frame
    rank = S.rank
    sf = S.structure_functions
    L = RationalMatrix.from_rows(chart, conn.reeb_matrix() if conn.is_extended else sf.reeb_matrix)
    G = [RationalMatrix.from_rows(chart, conn.connection_matrix(a)) for a in range(rank)]

    values = {}
    for a in range(rank):
        for b in range(a + 1, rank):
            R = G[b].derivative(frame[a]) - G[a].derivative(frame[b])
            R = R + (G[a] @ G[b]) - (G[b] @ G[a])
            for d in range(rank):
                coeff = sf.brackets[a][b][d]
                if coeff:
                    R = R - G[d].scale(coeff)
            f_ab = sf.vertical[a][b]
            if f_ab and not L.is_zero():
                R = R - L.scale(f_ab)
            values[(a, b)] = R.to_rows()
            logger.debug(f"curvature pair ({a}, {b}) of '{S.name}' done")

    curvature = CurvatureMap(S, values)
    logger.info(f"✓ Schouten curvature of '{S.name}': {len(curvature.nonzero_pairs())} nonzero frame pairs")
    return curvature


def reeb_curvature(S: ContactStructure, conn: ConnectionCoeffs) -> List[FunctionMatrix]:
    """
    R^N(xi, E_a) for an extended connection, a = 0..2m-1.

    R_xi,a = xi(G_a) - E_a(G_xi) + G_xi G_a - G_a G_xi - sum_d L[d][a] G_d;
    [xi, E_a] has no xi-component because L_xi theta = 0.
    """
    if not conn.is_extended:
        raise ValueError("Reeb-direction curvature needs an extended connection")
    chart = S.chart
    L = S.structure_functions.reeb_matrix
    G_xi = RationalMatrix.from_rows(chart, conn.reeb_matrix())
    G = [RationalMatrix.from_rows(chart, conn.connection_matrix(a)) for a in range(S.rank)]
    result = []
    for a in range(S.rank):
        R = G[a].derivative(S.reeb) - G_xi.derivative(S.frame[a])
        R = R + (G_xi @ G[a]) - (G[a] @ G_xi)
        for d in range(S.rank):
            if L[d][a]:
                R = R - G[d].scale(L[d][a])
        result.append(R.to_rows())
    return result


def curvature_of_bivector(R: CurvatureMap, B: FunctionMatrix) -> FunctionMatrix:
    """R(B) = sum_{a,b} B^{ab} R(E_a, E_b), with the same normalisation as the pairing."""
    chart = R.structure.chart
    result = RationalMatrix.zeros(chart, R.rank, R.rank)
    for a, b in R.pairs:
        weight = B[a][b] - B[b][a]
        if weight:
            result = result + RationalMatrix.from_rows(chart, R(a, b)).scale(weight * PAIRING_CONSTANT)
    return result.to_rows()


def dtheta_inverse(S: ContactStructure) -> FunctionMatrix:
    """
    Coefficient array of (d theta)^{-1}: DTHETA_INVERSE_SCALE * Omega^{-1}.

    With the pairing normalisation this gives d theta((d theta)^{-1}) = -4m.

    Raises:
        NotContactError: Omega singular as a rational-function matrix
    """
    try:
        inverse = fmat_inv(S.chart, S.dtheta_frame)
    except Exception as e:  # singular over Q(x)
        raise NotContactError("d theta restricted to D is not invertible") from e
    return fmat_scale(inverse, S.chart.const(DTHETA_INVERSE_SCALE))


def pair_dtheta(S: ContactStructure, B: FunctionMatrix):
    """<d theta, B> as a chart function."""
    omega = S.dtheta_frame
    total = S.chart.zero
    for a in range(S.rank):
        for b in range(S.rank):
            if omega[a][b] and B[a][b]:
                total += omega[a][b] * B[a][b]
    return total * PAIRING_CONSTANT


def wagner_endomorphism(S: ContactStructure, R: Optional[CurvatureMap] = None) -> FunctionMatrix:
    """N^W = 1/(4m) R((d theta)^{-1}); called C in the K-contact case."""
    R = R or schouten_curvature(S)
    N = curvature_of_bivector(R, dtheta_inverse(S))
    return fmat_scale(N, S.chart.const(f"1/{4 * S.m}"))


def annihilated_bivectors(omega: np.ndarray) -> List[np.ndarray]:
    """
    Basis of {B : <omega, B> = 0} as antisymmetric float arrays.

    omega is the frame matrix of d theta at a point.
    """
    omega = np.asarray(omega, dtype=float)
    rank = omega.shape[0]
    pairs = [(a, b) for a in range(rank) for b in range(a + 1, rank)]
    row = np.array([[2.0 * omega[a, b] for a, b in pairs]])
    kernel = null_space(row)
    basis = []
    for col in kernel.T:
        B = np.zeros((rank, rank))
        for value, (a, b) in zip(col, pairs):
            B[a, b] = value
            B[b, a] = -value
        basis.append(B)
    return basis


def frame_bivector(rank: int, a: int, b: int) -> np.ndarray:
    B = np.zeros((rank, rank))
    B[a, b] = 1.0
    B[b, a] = -1.0
    return B
