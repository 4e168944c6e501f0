from typing import List

import numpy as np
import pytest

from bmv_entanglement.linalg import DensityMatrix
from bmv_entanglement.model import PhysicalParams
from bmv_entanglement.types import SimPoint


@pytest.fixture
def example_params() -> PhysicalParams:
    # Two 10 ug particles 200 um apart, superposed over 100 d
    return PhysicalParams(m1=1e-8, m2=1e-8, d=200e-6, L=100 * 200e-6, T=1.0)


@pytest.fixture
def bell_state() -> DensityMatrix:
    vector = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    return DensityMatrix(np.outer(vector, vector.conj()))


@pytest.fixture
def mixed_qubit() -> np.ndarray:
    return np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])


@pytest.fixture
def omega_grid() -> np.ndarray:
    return np.array([0.0, 0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 4.2, 10.0])


@pytest.fixture
def time_grid() -> np.ndarray:
    return np.array([0.0, 0.01, 0.1, 0.3, 0.5, 1.0, 2.0, 4.0, 8.0])


@pytest.fixture(scope='session')
def dense_points() -> List[SimPoint]:
    # 100 x 100 over (omega, t) in [0, 10] x [0, 5]
    return [
        SimPoint(float(omega), float(t))
        for omega in np.linspace(0.0, 10.0, 100)
        for t in np.linspace(0.0, 5.0, 100)
    ]
