from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
import scipy.constants

from bmv_entanglement.linalg import kron, PAULI_Z
from bmv_entanglement.types import DomainException, InputException, SimPoint


@dataclass(frozen=True)
class PhysicalParams:
    """
    The dimensional description of the symmetric two-interferometer setup (SI units).

    d is the minimal distance between the particles and L the separation of the two
    branches of each superposition, orthogonal to d. T is the decoherence time.
    """

    m1: float
    m2: float
    d: float
    L: float
    T: float
    G: float = scipy.constants.G
    hbar: float = scipy.constants.hbar

    def __post_init__(self) -> None:
        for name in ('m1', 'm2', 'd', 'L', 'T', 'G', 'hbar'):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InputException(f'Parameter {name} must be finite, got {value}.')
        for name in ('m1', 'm2', 'd', 'T', 'G', 'hbar'):
            value = getattr(self, name)
            if value <= 0.0:
                raise InputException(f'Parameter {name} must be positive, got {value}.')
        # L = 0 is the degenerate geometry with no path-dependent energy
        if self.L < 0.0:
            raise InputException(f'Parameter L must be non-negative, got {self.L}.')


def coupling_delta(p: PhysicalParams) -> float:
    """Energy gap Δ = G m1 m2 (1/d - 1/sqrt(L² + d²)) between aligned and crossed branches."""
    r = math.hypot(p.L, p.d)
    # 1/d - 1/r rewritten without cancellation for L << d
    return p.G * p.m1 * p.m2 * p.L ** 2 / (p.d * r * (r + p.d))


def dimensionless_coupling(p: PhysicalParams) -> float:
    return coupling_delta(p) * p.T / p.hbar


def required_decoherence_time(p: PhysicalParams, omega: float) -> float:
    """Return the decoherence time T at which the setup reaches the coupling omega."""
    if not (math.isfinite(omega) and omega >= 0.0):
        raise InputException(f'Target coupling must be a non-negative number, got {omega}.')
    delta = coupling_delta(p)
    if delta == 0.0:
        raise DomainException('The geometry has zero coupling; no decoherence time reaches it.')
    return omega * p.hbar / delta


def physical_time(p: PhysicalParams, t: float) -> float:
    return t * p.T


def hamiltonian(omega: float) -> np.ndarray:
    """Dimensionless Hamiltonian -(ω/2) σz⊗σz in units of ħ/T."""
    if not (math.isfinite(omega) and omega >= 0.0):
        raise InputException(f'Coupling must be a non-negative number, got {omega}.')
    return -(omega / 2.0) * kron(PAULI_Z, PAULI_Z)


def unitary(point: SimPoint) -> np.ndarray:
    """exp(-i t H), which is diagonal since H is."""
    phase = point.omega * point.t / 2.0
    return np.diag(np.exp(1j * np.array([phase, -phase, -phase, phase])))
