from __future__ import annotations

from dataclasses import dataclass
import math
from typing import Optional

from bmv_entanglement.chsh import chsh_threshold
from bmv_entanglement.entanglement import optimal_time
from bmv_entanglement.fluctuations import max_time_jitter
from bmv_entanglement.model import (
    coupling_delta,
    dimensionless_coupling,
    PhysicalParams,
    physical_time,
    required_decoherence_time,
)
from bmv_entanglement.types import Report, ReportDict


@dataclass(init=False)
class DesignReport(Report):
    """Feasibility of a concrete setup, from SI parameters to dimensionless verdicts."""

    delta: float
    omega: float
    entangles: bool
    chsh_threshold: float
    violates_chsh: bool
    optimal_time: Optional[float]
    optimal_physical_time: Optional[float]
    s_t_max: Optional[float]
    s_t_max_seconds: Optional[float]
    target_omega: Optional[float]
    required_T: Optional[float]

    def __init__(self, p: PhysicalParams, target_omega: Optional[float] = None) -> None:
        self.delta = coupling_delta(p)
        self.omega = dimensionless_coupling(p)
        self.entangles = self.omega > 1.0
        self.chsh_threshold = chsh_threshold()
        self.violates_chsh = self.omega > self.chsh_threshold

        self.optimal_time = optimal_time(self.omega) if self.entangles else None
        self.optimal_physical_time = (
            physical_time(p, self.optimal_time) if self.optimal_time is not None else None
        )

        # Entanglement survives time jitter only while s_t² stays below the bound
        self.s_t_max = math.sqrt(max_time_jitter(self.omega)) if self.omega >= 1.0 else None
        self.s_t_max_seconds = physical_time(p, self.s_t_max) if self.s_t_max is not None else None

        self.target_omega = target_omega
        self.required_T = (
            required_decoherence_time(p, target_omega) if target_omega is not None else None
        )

    def to_dict(self) -> ReportDict:
        return {
            'delta': self.delta,
            'omega': self.omega,
            'entangles': self.entangles,
            'chsh_threshold': self.chsh_threshold,
            'violates_chsh': self.violates_chsh,
            'optimal_time': self.optimal_time,
            'optimal_physical_time': self.optimal_physical_time,
            's_t_max': self.s_t_max,
            's_t_max_seconds': self.s_t_max_seconds,
            'target_omega': self.target_omega,
            'required_T': self.required_T,
        }


def run_design(p: PhysicalParams, target_omega: Optional[float] = None) -> DesignReport:
    return DesignReport(p, target_omega)
