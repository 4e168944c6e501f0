"""
Entanglement of the evolved state through the positive partial transpose criterion.

For the symmetric state family with single-flip coherence a and double-flip coherence
b, the partial transpose has the four eigenvalues (1 + b ± 2|Re a|)/4 and
(1 - b ± 2|Im a|)/4. Only (1 - b - 2|Im a|)/4 can become negative; it is the quantity
tracked as lambda below. Where it is positive, (1 + b - 2|Re a|)/4 may be the smaller
one, so lambda is the minimal eigenvalue only where it is at most that branch.
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
import math
from typing import List, Union

import numpy as np
import scipy.optimize

from bmv_entanglement.dynamics import closed_coherences
from bmv_entanglement.linalg import DensityMatrix, hermitian_eigenvalues, partial_transpose
from bmv_entanglement.search import first_sign_change, Interval, negative_intervals
from bmv_entanglement.types import DomainException, InputException, Report, ReportDict, SimPoint

logger = logging.getLogger(__name__)

ENTANGLEMENT_TOLERANCE = 1e-12

ArrayLike = Union[float, np.ndarray]


@dataclass
class EntanglementReport(Report):
    lambda_min: float
    negativity: float
    entangled: bool

    def to_dict(self) -> ReportDict:
        return {
            'lambda_min': self.lambda_min,
            'negativity': self.negativity,
            'entangled': self.entangled,
        }


def pt_branch(omega: ArrayLike, tau: ArrayLike, damping: ArrayLike = 1.0) -> np.ndarray:
    """(1/2) e^{-τ} (sinh τ - damping |sin ωτ|); damping is 1 without parameter jitter."""
    omega = np.asarray(omega, dtype=np.float64)
    tau = np.asarray(tau, dtype=np.float64)
    return 0.5 * np.exp(-tau) * (np.sinh(tau) - damping * np.abs(np.sin(omega * tau)))


def pt_spectrum(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    """Ascending partial-transpose eigenvalues of the symmetric state family."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128).real
    re, im = np.abs(a.real), np.abs(a.imag)
    branches = np.stack(
        [(1 + b - 2 * re) / 4, (1 + b + 2 * re) / 4, (1 - b - 2 * im) / 4, (1 - b + 2 * im) / 4],
        axis=-1,
    )
    return np.sort(branches, axis=-1)


def smallest_pt_eigenvalue(omega: ArrayLike, t: ArrayLike) -> np.ndarray:
    """Vectorized lambda for any real coupling (it is even in ω)."""
    return pt_branch(omega, t)


def lambda_closed(point: SimPoint) -> float:
    return float(smallest_pt_eigenvalue(point.omega, point.t))


def pt_spectrum_closed(point: SimPoint) -> np.ndarray:
    a, b = closed_coherences(point.omega, point.t)
    return pt_spectrum(a, b)


def negativity_closed(point: SimPoint) -> float:
    # The other three branches are never negative
    return max(0.0, -lambda_closed(point))


def is_entangled(point: SimPoint) -> bool:
    return lambda_closed(point) < -ENTANGLEMENT_TOLERANCE


def lambda_numeric(rho: Union[DensityMatrix, np.ndarray]) -> EntanglementReport:
    """Diagonalize the partial transpose over the second particle."""
    rho = DensityMatrix.coerce(rho)
    eigenvalues = hermitian_eigenvalues(partial_transpose(rho, 'second'))

    lambda_min = float(eigenvalues[0])
    negativity = float(-np.sum(eigenvalues[eigenvalues < -ENTANGLEMENT_TOLERANCE]))
    return EntanglementReport(
        lambda_min=lambda_min,
        negativity=negativity,
        entangled=lambda_min < -ENTANGLEMENT_TOLERANCE,
    )


def _stationarity(omega: float, t: ArrayLike) -> np.ndarray:
    # Proportional to dλ/dt on the first sine arch
    return np.exp(-t) + np.sin(omega * np.asarray(t)) - omega * np.cos(omega * np.asarray(t))


def _check_coupling_above_threshold(omega: float) -> None:
    if not math.isfinite(omega):
        raise InputException(f'Coupling must be finite, got {omega}.')
    if omega <= 1.0:
        raise DomainException(
            f'No entanglement develops for coupling omega <= 1, got omega = {omega}.'
        )


def optimal_time(omega: float) -> float:
    """
    Return the first positive time at which lambda reaches a local minimum.

    The stationarity condition e^{-t} + sin ωt - ω cos ωt = 0 is literal on the first
    sine arch ωt < π, where it starts negative (1 - ω) and ends positive, so its first
    root there is the first minimum.
    """
    _check_coupling_above_threshold(omega)
    arch_end = math.pi / omega
    grid = np.linspace(0.0, arch_end, 2001)

    index = first_sign_change(_stationarity(omega, grid))
    if index >= 0:
        t0 = scipy.optimize.brentq(
            lambda t: float(_stationarity(omega, t)),
            grid[index],
            grid[index + 1],
            xtol=min(1e-15, arch_end * 1e-13),
            maxiter=200,
        )
        h = arch_end * 1e-4
        if lambda_closed(SimPoint(omega, t0)) <= min(
            float(smallest_pt_eigenvalue(omega, max(t0 - h, 0.0))),
            float(smallest_pt_eigenvalue(omega, t0 + h)),
        ):
            return float(t0)
        logger.debug('Stationary point %r at omega=%r is not a minimum', t0, omega)

    logger.warning(
        'Falling back to direct minimization of lambda on the first arch for omega=%r', omega
    )
    result = scipy.optimize.minimize_scalar(
        lambda t: float(smallest_pt_eigenvalue(omega, t)),
        bounds=(0.0, arch_end),
        method='bounded',
        options={'xatol': min(1e-12, arch_end * 1e-10)},
    )
    return float(result.x)


def _window_step(omega: float) -> float:
    return 0.01 if omega == 0.0 else min(0.01, math.pi / (50.0 * omega))


def entanglement_window(omega: float, t_max: float) -> List[Interval]:
    """Maximal intervals within (0, t_max] during which lambda is negative."""
    if not (math.isfinite(omega) and omega >= 0.0):
        raise InputException(f'Coupling must be a non-negative number, got {omega}.')
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise InputException(f'Maximal time must be a positive number, got {t_max}.')

    steps = int(math.ceil(t_max / _window_step(omega))) + 1
    grid = np.linspace(0.0, t_max, steps)

    # Same sign as lambda, without the prefactor underflowing at late times
    def gap(t: ArrayLike) -> np.ndarray:
        return np.sinh(t) - np.abs(np.sin(omega * np.asarray(t)))

    return negative_intervals(gap, lambda t: float(gap(t)), grid, xtol=1e-10)
