"""
Open-system evolution of the two particles under independent position dephasing.

The gravitational Hamiltonian is diagonal in the position basis, so it commutes with
the dephasing. In the interaction picture the state only dephases; the exact state
is that dephased state conjugated by the unitary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math
from typing import Callable, Tuple, Union

import numpy as np

from bmv_entanglement.linalg import (
    as_matrix,
    check_state,
    DensityMatrix,
    kron,
    MatrixLike,
    PLUS_STATE,
)
from bmv_entanglement.model import unitary
from bmv_entanglement.types import InputException, SimPoint

Envelope = Callable[[float], float]

# Number of subsystems on which the row and column basis states differ
FLIP_COUNT = np.array(
    [[bin(row ^ column).count('1') for column in range(4)] for row in range(4)]
)

INITIAL_STATE = kron(PLUS_STATE, PLUS_STATE)


def _exponential(t: float) -> float:
    return math.exp(-t)


def _gaussian(t: float) -> float:
    return math.exp(-(t ** 2))


@dataclass(frozen=True)
class DecayModel:
    """Decay envelope of single-particle coherences as a function of dimensionless time."""

    envelope: Envelope = field(default=_exponential)
    name: str = 'exponential'

    def __post_init__(self) -> None:
        if self.envelope(0.0) != 1.0:
            raise InputException(f'Decay envelope "{self.name}" must equal 1 at t = 0.')
        samples = [self.envelope(t) for t in np.linspace(0.0, 10.0, 101)]
        if any(not (0.0 <= value <= 1.0) for value in samples):
            raise InputException(f'Decay envelope "{self.name}" must stay within [0, 1].')
        if any(later > earlier for earlier, later in zip(samples, samples[1:])):
            raise InputException(f'Decay envelope "{self.name}" must be non-increasing.')

    @classmethod
    def exponential(cls) -> DecayModel:
        return cls(envelope=_exponential, name='exponential')

    @classmethod
    def gaussian(cls) -> DecayModel:
        return cls(envelope=_gaussian, name='gaussian')


def _check_time(t: float) -> None:
    if not math.isfinite(t) or t < 0.0:
        raise InputException(f'Time must be a non-negative number, got {t}.')


def decohere_single(a: MatrixLike, t: float, model: DecayModel = DecayModel()) -> np.ndarray:
    """Damp the coherences of a single-particle state; populations are constant."""
    _check_time(t)
    a = as_matrix(a, dimension=2)
    check_state(a)

    decayed = a.copy()
    factor = model.envelope(t)
    decayed[0, 1] *= factor
    decayed[1, 0] *= factor
    return decayed


def decohere_pair(
    c: Union[DensityMatrix, MatrixLike], t: float, model: DecayModel = DecayModel()
) -> DensityMatrix:
    """Independent dephasing of both particles: entry (i, j) decays once per flipped particle."""
    _check_time(t)
    c = DensityMatrix.coerce(c)

    factor = model.envelope(t)
    return DensityMatrix(c.matrix * factor ** FLIP_COUNT)


def coherence_pattern(a: Union[complex, np.ndarray], b: Union[float, np.ndarray]) -> np.ndarray:
    """
    Build the symmetric state family shared by the exact and the jitter-averaged evolution.

    a is the single-flip coherence and b the double-flip coherence; arrays broadcast to a
    stack of matrices.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    a, b = np.broadcast_arrays(a, b)
    one = np.ones_like(a)
    a_bar = a.conj()
    rows = [
        [one, a, a, b],
        [a_bar, one, b, a_bar],
        [a_bar, b, one, a_bar],
        [b, a, a, one],
    ]
    return np.stack([np.stack(row, axis=-1) for row in rows], axis=-2) / 4.0


def closed_coherences(omega: np.ndarray, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Single-flip and double-flip coherences of the exact state, before the 1/4 factor."""
    omega = np.asarray(omega, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    return np.exp(1j * omega * t - t), np.exp(-2.0 * t)


def evolve_closed(point: SimPoint) -> DensityMatrix:
    """The exact state at (ω, t) from |++⟩ with exponential dephasing."""
    a, b = closed_coherences(point.omega, point.t)
    return DensityMatrix(coherence_pattern(a, b))


def evolve_state(
    rho0: Union[DensityMatrix, MatrixLike], point: SimPoint, model: DecayModel = DecayModel()
) -> DensityMatrix:
    """Evolve an arbitrary initial state: dephase in the interaction picture, then rotate."""
    dephased = decohere_pair(rho0, point.t, model)
    u = unitary(point)
    evolved = u @ dephased.matrix @ u.conj().T
    # Restore exact Hermiticity lost to rounding in the products
    return DensityMatrix((evolved + evolved.conj().T) / 2.0)


def evolve_numeric(point: SimPoint, model: DecayModel = DecayModel()) -> DensityMatrix:
    return evolve_state(INITIAL_STATE, point, model)
