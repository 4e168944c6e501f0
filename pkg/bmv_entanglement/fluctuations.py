"""
Run-to-run Gaussian jitter of the interaction time and of the coupling.

The averaged state keeps the symmetric form of the exact state, with coherences
averaged to first order in the jitter. Its formulas are only meaningful for
t > s_t², since earlier times would extrapolate the dephasing backwards.
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
import math
from typing import Dict, Tuple
import warnings

import numpy as np
import scipy.optimize

from bmv_entanglement.dynamics import closed_coherences, coherence_pattern, FLIP_COUNT
from bmv_entanglement.entanglement import pt_branch, pt_spectrum
from bmv_entanglement.linalg import DensityMatrix
from bmv_entanglement.types import (
    DomainException,
    FluctuationWarning,
    InputException,
    Report,
    ReportDict,
    SimPoint,
)

logger = logging.getLogger(__name__)

# Seed used by the command line when none is given
DEFAULT_SEED = 1729
# Samples drawn per generator call; does not affect the stream
MONTE_CARLO_CHUNK = 1 << 16


@dataclass(frozen=True)
class FluctuationSpec:
    """Standard deviations of the dimensionless time and coupling jitter."""

    s_t: float = 0.0
    s_omega: float = 0.0

    def __post_init__(self) -> None:
        for name, value in (('s_t', self.s_t), ('s_omega', self.s_omega)):
            if not (math.isfinite(value) and value >= 0.0):
                raise InputException(f'Jitter {name} must be a non-negative number, got {value}.')

    def validity_flags(self, point: SimPoint) -> Dict[str, bool]:
        """Whether the jitter is small compared to the point, as the expansion assumes."""
        return {
            'small_time_jitter': not (self.s_t > 0.0 and self.s_t >= point.t / 3.0),
            'small_coupling_jitter': not (self.s_omega > 0.0 and self.s_omega >= point.omega / 3.0),
        }


def _check_domain(point: SimPoint, spec: FluctuationSpec) -> None:
    if spec.s_t > 0.0 and point.t <= spec.s_t ** 2:
        raise DomainException(
            f'The averaged state requires t > s_t^2 = {spec.s_t ** 2!r}, got t = {point.t!r}.'
        )


def averaged_coherences(point: SimPoint, spec: FluctuationSpec) -> Tuple[complex, float]:
    a, b = closed_coherences(point.omega, point.t)
    a = a * np.exp(
        -0.5 * spec.s_omega ** 2 * point.t ** 2 + 0.5 * spec.s_t ** 2 * (1j * point.omega - 1) ** 2
    )
    b = b * np.exp(2.0 * spec.s_t ** 2)
    return complex(a), float(b)


@dataclass
class AveragedState(Report):
    state: DensityMatrix
    small_time_jitter: bool
    small_coupling_jitter: bool

    @property
    def positive(self) -> bool:
        return self.state.is_positive

    @property
    def valid(self) -> bool:
        return self.positive and self.small_time_jitter and self.small_coupling_jitter

    def to_dict(self) -> ReportDict:
        return {
            'positive': self.positive,
            'small_time_jitter': self.small_time_jitter,
            'small_coupling_jitter': self.small_coupling_jitter,
        }


def averaged_state(point: SimPoint, spec: FluctuationSpec) -> AveragedState:
    """First-order average of the state over the jitter, flagged rather than rejected."""
    _check_domain(point, spec)
    a, b = averaged_coherences(point, spec)

    result = AveragedState(
        state=DensityMatrix(coherence_pattern(a, b), strict=False),
        **spec.validity_flags(point),
    )
    if not result.valid:
        failed = [flag for flag, value in result.to_dict().items() if not value]
        warnings.warn(
            f'Averaged state at {point} with {spec} violates: {", ".join(failed)}.',
            FluctuationWarning,
        )
    return result


def _damping(omega: np.ndarray, t: np.ndarray, spec: FluctuationSpec) -> np.ndarray:
    return np.exp(-(spec.s_t ** 2 / 2.0) * (1.0 + omega ** 2) - (spec.s_omega ** 2 / 2.0) * t ** 2)


def lambda_bar_values(omega: float, t: np.ndarray, spec: FluctuationSpec) -> np.ndarray:
    """Vectorized lambda_bar over times, without domain checks."""
    t = np.asarray(t, dtype=np.float64)
    omega_array = np.asarray(omega, dtype=np.float64)
    return pt_branch(omega_array, t - spec.s_t ** 2, _damping(omega_array, t, spec))


def lambda_bar(point: SimPoint, spec: FluctuationSpec) -> float:
    _check_domain(point, spec)
    return float(lambda_bar_values(point.omega, np.float64(point.t), spec))


def pt_spectrum_bar(point: SimPoint, spec: FluctuationSpec) -> np.ndarray:
    _check_domain(point, spec)
    return pt_spectrum(*averaged_coherences(point, spec))


def max_time_jitter(omega: float) -> float:
    """Largest s_t² for which the averaged state still becomes entangled."""
    if not math.isfinite(omega):
        raise InputException(f'Coupling must be finite, got {omega}.')
    if omega < 1.0:
        raise DomainException(
            f'No entanglement develops for coupling omega < 1, got omega = {omega}.'
        )
    return 2.0 * math.log(omega) / (1.0 + omega ** 2)


def min_lambda_bar(
    omega: float, spec: FluctuationSpec, t_max: float = 5.0
) -> Tuple[float, float]:
    """
    Return (t, lambda_bar) at the infimum of lambda_bar over s_t² < t <= t_max.

    Near the threshold the negative dip sits at tiny t - s_t², so the scan is geometric
    close to the domain edge and linear further out.
    """
    if not (math.isfinite(omega) and omega >= 0.0):
        raise InputException(f'Coupling must be a non-negative number, got {omega}.')
    start = spec.s_t ** 2
    if not (math.isfinite(t_max) and t_max > start):
        raise InputException(f'Maximal time must exceed s_t^2 = {start!r}, got {t_max}.')

    span = t_max - start
    offsets = np.unique(
        np.concatenate([np.geomspace(span * 1e-8, span, 2000), np.linspace(0.0, span, 4001)[1:]])
    )
    grid = start + offsets
    values = lambda_bar_values(omega, grid, spec)

    index = int(np.argmin(values))
    best_t, best_value = float(grid[index]), float(values[index])
    lower = float(grid[index - 1]) if index > 0 else start
    upper = float(grid[min(index + 1, len(grid) - 1)])
    if upper > lower:
        result = scipy.optimize.minimize_scalar(
            lambda t: float(lambda_bar_values(omega, np.float64(t), spec)),
            bounds=(lower, upper),
            method='bounded',
            options={'xatol': 1e-14},
        )
        if result.fun < best_value and result.x > start:
            best_t, best_value = float(result.x), float(result.fun)
    return best_t, best_value


@dataclass
class MonteCarloAverage(Report):
    mean: DensityMatrix
    standard_error: np.ndarray
    n_samples: int
    clamped: int
    seed: int

    def to_dict(self) -> ReportDict:
        return {'n_samples': self.n_samples, 'clamped': self.clamped, 'seed': self.seed}


def monte_carlo_average(
    point: SimPoint, spec: FluctuationSpec, n_samples: int, seed: int
) -> MonteCarloAverage:
    """
    Average the exact state over sampled (t, ω) with a seeded PCG64 generator.

    Each sample draws the pair (ξ_t, ξ_ω) from Generator.standard_normal. Sampled times
    below zero are clamped to zero and counted. The result is bit-identical for a given
    (seed, n_samples).
    """
    if isinstance(n_samples, bool) or not isinstance(n_samples, (int, np.integer)):
        raise InputException(f'Number of samples must be an integer, got {n_samples!r}.')
    if n_samples < 1:
        raise InputException(f'Number of samples must be positive, got {n_samples}.')
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise InputException(f'Seed must be a non-negative integer, got {seed!r}.')

    rng = np.random.Generator(np.random.PCG64(seed))
    # Accumulate deviations from the unperturbed coherences to keep the variance exact
    a0, b0 = closed_coherences(point.omega, point.t)
    sums = np.zeros(3)
    squares = np.zeros(3)
    clamped = 0

    remaining = n_samples
    while remaining:
        size = min(MONTE_CARLO_CHUNK, remaining)
        xi = rng.standard_normal((size, 2))
        times = point.t + spec.s_t * xi[:, 0]
        negative = times < 0.0
        clamped += int(np.count_nonzero(negative))
        times[negative] = 0.0
        couplings = point.omega + spec.s_omega * xi[:, 1]

        a, b = closed_coherences(couplings, times)
        deviations = np.stack([(a - a0).real, (a - a0).imag, b - b0])
        sums += deviations.sum(axis=1)
        squares += (deviations ** 2).sum(axis=1)
        remaining -= size

    if clamped:
        logger.info('Clamped %d of %d sampled times to zero', clamped, n_samples)

    means = sums / n_samples
    if n_samples > 1:
        variances = np.maximum(squares / n_samples - means ** 2, 0.0) * (
            n_samples / (n_samples - 1)
        )
    else:
        variances = np.zeros(3)
    errors = np.sqrt(variances / n_samples) / 4.0

    mean_a = a0 + complex(means[0], means[1])
    mean_b = b0 + means[2]
    standard_error = np.select(
        [FLIP_COUNT == 1, FLIP_COUNT == 2],
        [math.hypot(errors[0], errors[1]), errors[2]],
        default=0.0,
    )
    return MonteCarloAverage(
        mean=DensityMatrix(coherence_pattern(mean_a, mean_b)),
        standard_error=standard_error,
        n_samples=n_samples,
        clamped=clamped,
        seed=int(seed),
    )
