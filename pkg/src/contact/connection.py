"""Horizontal (Koszul-type) and extended connections, tau and the K-contact test."""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from loguru import logger

from src.chart.matrices import (
    FunctionMatrix,
    fmat_add,
    fmat_equal,
    fmat_is_zero,
    fmat_mul,
    fmat_scale,
)
from src.chart.fields import lie_derivative_metric
from src.contact.structure import ContactStructure


@dataclass(frozen=True, eq=False)
class ConnectionCoeffs:
    """
    Коэффициенты связности в репере D.

    horizontal[a][d][b]: component d of nabla_{E_a} E_b
    reeb[d][b]: component d of nabla_xi E_b (None for connections defined only along D)
    """

    structure: ContactStructure
    horizontal: tuple
    reeb: Optional[tuple] = None
    label: str = "horizontal"

    @property
    def is_extended(self) -> bool:
        return self.reeb is not None

    def connection_matrix(self, a: int) -> FunctionMatrix:
        return [list(row) for row in self.horizontal[a]]

    def reeb_matrix(self) -> Optional[FunctionMatrix]:
        return None if self.reeb is None else [list(row) for row in self.reeb]

    @cached_property
    def numeric(self):
        from src.contact.numeric import NumericConnection

        return NumericConnection(self)


def _freeze(matrix) -> tuple:
    return tuple(tuple(row) for row in matrix)


def horizontal_connection(S: ContactStructure) -> ConnectionCoeffs:
    """
    nabla^g from the Koszul-type formula with bracket terms projected to D.

    2 g(nabla_{E_a} E_b, E_c) = E_a g_bc + E_b g_ca - E_c g_ab
        + g(pi[E_a,E_b], E_c) - g(pi[E_b,E_c], E_a) + g(pi[E_c,E_a], E_b)

    Raises:
        MetricDegeneracyError: gram not invertible over rational functions
    """
    chart = S.chart
    frame = S.frame
    rank = len(frame)
    g = S.metric.gram
    g_inv = S.gram_inverse
    c = S.structure_functions.brackets
    half = chart.const("1/2")

    dg = [[[frame[a].apply(g[b][e]) for e in range(rank)] for b in range(rank)] for a in range(rank)]

    gammas = []
    for a in range(rank):
        koszul = [[chart.zero] * rank for _ in range(rank)]  # koszul[b][e] = K_{a b e}
        for b in range(rank):
            for e in range(rank):
                value = dg[a][b][e] + dg[b][e][a] - dg[e][a][b]
                for d in range(rank):
                    if c[a][b][d]:
                        value += c[a][b][d] * g[d][e]
                    if c[b][e][d]:
                        value -= c[b][e][d] * g[d][a]
                    if c[a][e][d]:
                        value -= c[a][e][d] * g[d][b]
                koszul[b][e] = value
        # Gamma_a[d][b] = 1/2 sum_e ginv[d][e] K_{a b e}
        gamma_a = [[chart.zero] * rank for _ in range(rank)]
        for d in range(rank):
            for b in range(rank):
                total = chart.zero
                for e in range(rank):
                    if g_inv[d][e] and koszul[b][e]:
                        total += g_inv[d][e] * koszul[b][e]
                gamma_a[d][b] = half * total
        gammas.append(_freeze(gamma_a))

    logger.info(f"✓ Horizontal connection of '{S.name}' computed ({rank}^3 coefficients)")
    return ConnectionCoeffs(structure=S, horizontal=tuple(gammas), reeb=None, label="horizontal")


def tau_endomorphism(S: ContactStructure) -> FunctionMatrix:
    """tau = 1/2 G^{-1} L_xi g, i.e. g(tau X, Y) = 1/2 (L_xi g)(X, Y)."""
    lie = lie_derivative_metric(S.reeb, S.metric, S.coframe)
    return fmat_scale(fmat_mul(S.chart, S.gram_inverse, lie), S.chart.const("1/2"))


def is_K_contact(S: ContactStructure) -> bool:
    result = fmat_is_zero(tau_endomorphism(S))
    logger.info(f"K-contact check for '{S.name}': {result}")
    return result


def extended_connection(
    S: ContactStructure,
    N: FunctionMatrix,
    label: str = "extended",
    base: Optional[ConnectionCoeffs] = None,
) -> ConnectionCoeffs:
    """
    nabla^N: horizontal part of nabla^g, nabla^N_xi Y = pi[xi, Y] + N Y.

    N is an endomorphism field of D in frame components.
    """
    base = base or horizontal_connection(S)
    reeb = fmat_add(S.structure_functions.reeb_matrix, N)
    return ConnectionCoeffs(structure=S, horizontal=base.horizontal, reeb=_freeze(reeb), label=label)


def adapted_connection(S: ContactStructure, base: Optional[ConnectionCoeffs] = None) -> ConnectionCoeffs:
    """nabla^tau."""
    return extended_connection(S, tau_endomorphism(S), label="adapted", base=base)


def reeb_coefficients_match(first: ConnectionCoeffs, second: ConnectionCoeffs, difference: FunctionMatrix) -> bool:
    """first.reeb == second.reeb + difference, exactly."""
    return fmat_equal(first.reeb_matrix(), fmat_add(second.reeb_matrix(), difference))
