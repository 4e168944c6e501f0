"""
Device-independent detection through the CHSH inequality.

A two-qubit state violates CHSH for some measurement settings if and only if the two
largest squared singular values of its Pauli correlation matrix sum to more than 1.
"""
from __future__ import annotations

from dataclasses import dataclass
import functools
import logging
import math
from typing import Tuple, Union

import numpy as np
import scipy.optimize

from bmv_entanglement.linalg import DensityMatrix, PAULIS, singular_values
from bmv_entanglement.search import refined_maximum
from bmv_entanglement.types import DomainException, InputException, SimPoint

logger = logging.getLogger(__name__)

# Beyond this both singular values are below e^-3 and M is far below 1
CHSH_T_MAX = 3.0

CORRELATION_TOLERANCE = 1e-12

PAULI_PRODUCTS = np.array([[np.kron(first, second) for second in PAULIS] for first in PAULIS])


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """T_ij = tr(ρ σ_i ⊗ σ_j)."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=np.float64)
        if entries.shape != (3, 3):
            raise InputException(f'Correlation matrix must be 3x3, got shape {entries.shape}.')
        if not np.all(np.isfinite(entries)):
            raise InputException('Correlation matrix contains non-finite entries.')
        if np.max(np.abs(entries)) > 1.0 + CORRELATION_TOLERANCE:
            raise InputException('Correlation matrix entries must lie within [-1, 1].')
        entries.flags.writeable = False
        object.__setattr__(self, 'entries', entries)

    def singular_values(self) -> np.ndarray:
        return singular_values(self.entries)


def correlation_matrix(rho: Union[DensityMatrix, np.ndarray]) -> CorrelationMatrix:
    rho = DensityMatrix.coerce(rho)
    traces = np.einsum('ab,ijba->ij', rho.matrix, PAULI_PRODUCTS)

    residue = float(np.max(np.abs(traces.imag)))
    if residue > CORRELATION_TOLERANCE:
        raise InputException(f'Pauli correlations have imaginary residue {residue:.3g}.')
    return CorrelationMatrix(traces.real)


def horodecki_m(tm: CorrelationMatrix) -> float:
    """Sum of the two largest squared singular values."""
    values = tm.singular_values()
    return float(values[0] ** 2 + values[1] ** 2)


def violates_chsh(tm: CorrelationMatrix) -> bool:
    return horodecki_m(tm) > 1.0


def max_chsh_value(tm: CorrelationMatrix) -> float:
    return 2.0 * math.sqrt(horodecki_m(tm))


def correlation_singular_values_closed(point: SimPoint) -> np.ndarray:
    """Singular values e^{-2t} and the doubly degenerate e^{-t}|sin ωt| of the exact state."""
    coherent = math.exp(-point.t) * abs(math.sin(point.omega * point.t))
    return np.sort(np.array([math.exp(-2.0 * point.t), coherent, coherent]))[::-1]


def horodecki_m_closed(omega: Union[float, np.ndarray], t: Union[float, np.ndarray]) -> np.ndarray:
    t = np.asarray(t, dtype=np.float64)
    double_flip = np.exp(-2.0 * t)
    single_flip = np.exp(-t) * np.abs(np.sin(np.asarray(omega) * t))
    return np.where(
        double_flip >= single_flip,
        double_flip ** 2 + single_flip ** 2,
        2.0 * single_flip ** 2,
    )


def sup_horodecki_m(omega: float) -> Tuple[float, float]:
    """Return (t, M) at the largest M of the exact state over 0 < t <= CHSH_T_MAX."""
    if not (math.isfinite(omega) and omega >= 0.0):
        raise InputException(f'Coupling must be a non-negative number, got {omega}.')
    step = 0.005 if omega == 0.0 else min(0.005, math.pi / (100.0 * omega))
    grid = np.linspace(0.0, CHSH_T_MAX, int(math.ceil(CHSH_T_MAX / step)) + 1)[1:]
    return refined_maximum(
        lambda t: horodecki_m_closed(omega, t), lambda t: float(horodecki_m_closed(omega, t)), grid
    )


def chsh_gap(omega: float) -> float:
    return sup_horodecki_m(omega)[1] - 1.0


@functools.lru_cache(maxsize=None)
def chsh_threshold(lower: float = 4.0, upper: float = 4.5, xtol: float = 1e-12) -> float:
    """Smallest coupling above which the exact state violates CHSH at some time."""
    lower_gap, upper_gap = chsh_gap(lower), chsh_gap(upper)
    if not (lower_gap < 0.0 < upper_gap):
        raise DomainException(
            f'CHSH threshold is not bracketed by [{lower}, {upper}] '
            f'(gaps {lower_gap:.3g}, {upper_gap:.3g}).'
        )
    omega = scipy.optimize.bisect(chsh_gap, lower, upper, xtol=xtol)
    logger.debug('CHSH threshold %r bracketed by [%r, %r]', omega, lower, upper)
    return float(omega)
