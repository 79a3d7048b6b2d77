"""Matrix exponential and principal logarithm."""

from typing import Optional, Union

import numpy as np
import sympy as sp
from loguru import logger
from scipy.linalg import expm, logm

from src.errors import DimensionMismatchError

MatrixInput = Union[np.ndarray, sp.MatrixBase]


def _check_square(shape) -> None:
    if len(shape) != 2 or shape[0] != shape[1]:
        raise DimensionMismatchError("matrix must be square", {"shape": list(shape)})


def nilpotency_index(A: MatrixInput) -> Optional[int]:
    """Smallest k with A^k = 0 (exact zero test), or None if A is not nilpotent."""
    _check_square(A.shape)
    n = A.shape[0]
    if isinstance(A, sp.MatrixBase):
        power = sp.eye(n)
        for k in range(1, n + 1):
            power = power * A
            if power.is_zero_matrix:
                return k
        return None

    power = np.eye(n)
    for k in range(1, n + 1):
        power = power @ A
        if not np.any(power):
            return k
    return None


def matrix_exp(A: MatrixInput, t: float = 1.0):
    """
    exp(tA).

    Nilpotent input gives the truncated series I + tA + ... exactly (sympy input
    stays symbolic); otherwise scipy's scaling-and-squaring Pade.
    """
    _check_square(A.shape)
    index = nilpotency_index(A)

    if isinstance(A, sp.MatrixBase):
        tA = sp.nsimplify(t) * A
        if index is not None:
            result = sp.zeros(*A.shape)
            term = sp.eye(A.shape[0])
            for k in range(index):
                result += term
                term = term * tA / (k + 1)
            return result
        return expm(np.array(tA.tolist(), dtype=float))

    tA = t * np.asarray(A, dtype=float)
    if index is not None:
        result = np.zeros_like(tA)
        term = np.eye(tA.shape[0])
        for k in range(index):
            result = result + term
            term = term @ tA / (k + 1)
        return result
    return expm(tA)


def matrix_log(M: np.ndarray, max_defect: float = 0.5) -> Optional[np.ndarray]:
    """
    Principal logarithm of a near-identity matrix.

    Returns None when ||M - I||_2 >= max_defect: the branch is not trusted there.
    """
    M = np.asarray(M, dtype=float)
    _check_square(M.shape)
    defect = np.linalg.norm(M - np.eye(M.shape[0]), 2)
    if defect >= max_defect:
        logger.debug(f"log skipped: ||M - I|| = {defect:.3f}")
        return None
    log = logm(M)
    if np.iscomplexobj(log):
        if np.max(np.abs(log.imag)) > 1e-8:
            logger.warning(f"matrix log has imaginary part {np.max(np.abs(log.imag)):.2e}")
            return None
        log = log.real
    return np.asarray(log, dtype=float)
