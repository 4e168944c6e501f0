"""Curves of model quantities over a grid of times or couplings."""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
import math
from typing import Any, Dict, List
import warnings

import numpy as np
import pandas as pd

from bmv_entanglement.chsh import correlation_matrix, horodecki_m
from bmv_entanglement.dynamics import evolve_closed
from bmv_entanglement.entanglement import (
    ENTANGLEMENT_TOLERANCE,
    lambda_closed,
    lambda_numeric,
    optimal_time,
    smallest_pt_eigenvalue,
)
from bmv_entanglement.fluctuations import (
    averaged_state,
    FluctuationSpec,
    lambda_bar_values,
    max_time_jitter,
)
from bmv_entanglement.types import DomainException, InputException, SimPoint

logger = logging.getLogger(__name__)

TIME_QUANTITIES = ('lambda', 'lambda_bar', 'horodecki_M')
COUPLING_QUANTITIES = ('optimal_time', 'jitter_bound')
QUANTITIES = TIME_QUANTITIES + COUPLING_QUANTITIES

Columns = Dict[str, Any]


@dataclass(frozen=True)
class SweepRequest:
    """
    A grid of `steps` evenly spaced values from `start` to `stop`.

    Time quantities vary t at the fixed coupling `omega`; coupling quantities vary ω.
    """

    quantity: str
    start: float
    stop: float
    steps: int
    omega: float = 0.0
    fluctuations: FluctuationSpec = field(default_factory=FluctuationSpec)

    def __post_init__(self) -> None:
        if self.quantity not in QUANTITIES:
            raise InputException(
                f'Unknown sweep quantity "{self.quantity}"; expected one of {list(QUANTITIES)}.'
            )
        if isinstance(self.steps, bool) or not isinstance(self.steps, (int, np.integer)):
            raise InputException(f'Sweep steps must be an integer, got {self.steps!r}.')
        if self.steps < 2:
            raise InputException(f'Sweep needs at least 2 steps, got {self.steps}.')
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InputException(f'Sweep range must be finite, got [{self.start}, {self.stop}].')
        if not self.start < self.stop:
            raise InputException(
                f'Sweep start must be below stop, got start {self.start} and stop {self.stop}.'
            )
        if not (math.isfinite(self.omega) and self.omega >= 0.0):
            raise InputException(f'Coupling must be a non-negative number, got {self.omega}.')
        if self.start < 0.0:
            raise InputException(f'Sweep start must be non-negative, got {self.start}.')
        self._check_domain()

    def _check_domain(self) -> None:
        s_t = self.fluctuations.s_t
        if self.quantity in ('lambda_bar', 'horodecki_M') and s_t > 0.0 and self.start <= s_t ** 2:
            raise DomainException(
                f'Sweep of {self.quantity} requires t > s_t^2 = {s_t ** 2!r}, '
                f'got start {self.start!r}.'
            )
        if self.quantity == 'optimal_time' and self.start <= 1.0:
            raise DomainException(
                f'Sweep of optimal_time requires omega > 1, got start {self.start!r}.'
            )
        if self.quantity == 'jitter_bound' and self.start < 1.0:
            raise DomainException(
                f'Sweep of jitter_bound requires omega >= 1, got start {self.start!r}.'
            )

    @property
    def variable(self) -> str:
        return 't' if self.quantity in TIME_QUANTITIES else 'omega'

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


def _sweep_lambda(req: SweepRequest, grid: np.ndarray) -> Columns:
    values = smallest_pt_eigenvalue(req.omega, grid)
    return {'lambda': values, 'entangled': values < -ENTANGLEMENT_TOLERANCE}


def _sweep_lambda_bar(req: SweepRequest, grid: np.ndarray) -> Columns:
    values = lambda_bar_values(req.omega, grid, req.fluctuations)
    flags = [req.fluctuations.validity_flags(SimPoint(req.omega, float(t))) for t in grid]
    positive: List[bool] = []
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        for t in grid:
            averaged = averaged_state(SimPoint(req.omega, float(t)), req.fluctuations)
            positive.append(averaged.positive)
    return {
        'lambda_bar': values,
        'entangled': values < -ENTANGLEMENT_TOLERANCE,
        'positive': positive,
        'small_time_jitter': [flag['small_time_jitter'] for flag in flags],
        'small_coupling_jitter': [flag['small_coupling_jitter'] for flag in flags],
    }


def _sweep_horodecki_m(req: SweepRequest, grid: np.ndarray) -> Columns:
    jittered = req.fluctuations != FluctuationSpec()
    columns: Dict[str, List[Any]] = {
        'horodecki_M': [],
        'violates_chsh': [],
        'entangled': [],
    }
    if jittered:
        columns.update({'positive': [], 'small_time_jitter': [], 'small_coupling_jitter': []})

    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        for t in grid:
            point = SimPoint(req.omega, float(t))
            if jittered:
                averaged = averaged_state(point, req.fluctuations)
                state = averaged.state
                for flag, value in averaged.to_dict().items():
                    columns[flag].append(value)
            else:
                state = evolve_closed(point)
            m = horodecki_m(correlation_matrix(state))
            columns['horodecki_M'].append(m)
            columns['violates_chsh'].append(m > 1.0)
            columns['entangled'].append(lambda_numeric(state).entangled)
    return columns


def _sweep_optimal_time(req: SweepRequest, grid: np.ndarray) -> Columns:
    times = [optimal_time(float(omega)) for omega in grid]
    return {
        'optimal_time': times,
        'lambda_min': [lambda_closed(SimPoint(float(o), t)) for o, t in zip(grid, times)],
        'asymptotic_time': np.pi / (2.0 * grid),
    }


def _sweep_jitter_bound(req: SweepRequest, grid: np.ndarray) -> Columns:
    bounds = np.array([max_time_jitter(float(omega)) for omega in grid])
    return {'jitter_bound': bounds, 's_t_max': np.sqrt(bounds)}


_SWEEPS = {
    'lambda': _sweep_lambda,
    'lambda_bar': _sweep_lambda_bar,
    'horodecki_M': _sweep_horodecki_m,
    'optimal_time': _sweep_optimal_time,
    'jitter_bound': _sweep_jitter_bound,
}


def run_sweep(req: SweepRequest) -> pd.DataFrame:
    """One row per grid point, in grid order."""
    grid = req.grid()
    logger.debug('Sweeping %s over %d points of %s', req.quantity, len(grid), req.variable)
    columns = _SWEEPS[req.quantity](req, grid)

    table = pd.DataFrame({req.variable: grid})
    for name, values in columns.items():
        table[name] = values
    return table
