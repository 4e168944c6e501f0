"""Dense complex linear algebra for the fixed 2×2, 3×3 and 4×4 objects of the model."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Optional, Union

import numpy as np

from bmv_entanglement.types import InputException

HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-12
POSITIVITY_TOLERANCE = 1e-10
# Looser contract for arbitrary eigensolver input
EIGENSOLVER_HERMITIAN_TOLERANCE = 1e-10

SUPPORTED_DIMENSIONS = (2, 3, 4)
EIGENSOLVER_DIMENSIONS = (3, 4)

Subsystem = Literal['first', 'second']
MatrixLike = Union[np.ndarray, Iterable]

IDENTITY_2 = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

PLUS_STATE = np.full((2, 2), 0.5, dtype=np.complex128)


def as_matrix(entries: MatrixLike, dimension: Optional[int] = None) -> np.ndarray:
    """Coerce entries to a square complex matrix of a supported dimension."""
    try:
        matrix = np.array(entries, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InputException(f'Could not interpret matrix entries: {e}.')

    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InputException(f'Matrix must be square, got shape {matrix.shape}.')
    if matrix.shape[0] not in SUPPORTED_DIMENSIONS:
        raise InputException(
            f'Matrix dimension must be one of {SUPPORTED_DIMENSIONS}, got {matrix.shape[0]}.'
        )
    if dimension is not None and matrix.shape[0] != dimension:
        raise InputException(f'Expected a {dimension}x{dimension} matrix, got {matrix.shape}.')
    if not np.all(np.isfinite(matrix)):
        raise InputException('Matrix contains non-finite entries.')

    return matrix


def _freeze(matrix: np.ndarray) -> np.ndarray:
    matrix.flags.writeable = False
    return matrix


def hermiticity_error(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().swapaxes(-1, -2))))


def check_state(matrix: np.ndarray, strict: bool = True) -> bool:
    """
    Validate a density matrix of any supported dimension.

    Hermiticity and unit trace are always enforced. Positivity is enforced when
    strict, otherwise it is returned so the caller can flag it.
    """
    if hermiticity_error(matrix) > HERMITIAN_TOLERANCE:
        raise InputException(
            f'Density matrix is not Hermitian (deviation {hermiticity_error(matrix):.3g}).'
        )
    trace = np.trace(matrix)
    if abs(trace - 1.0) > TRACE_TOLERANCE:
        raise InputException(f'Density matrix trace must be 1, got {trace.real:.17g}.')

    minimum = float(np.linalg.eigvalsh(matrix)[0])
    is_positive = minimum >= -POSITIVITY_TOLERANCE
    if strict and not is_positive:
        raise InputException(
            f'Density matrix is not positive semidefinite (minimal eigenvalue {minimum:.3g}).'
        )
    return is_positive


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A 4×4 two-particle state."""

    matrix: np.ndarray
    strict: bool = field(default=True, compare=False)
    is_positive: bool = field(init=False, compare=False)

    def __post_init__(self) -> None:
        matrix = as_matrix(self.matrix, dimension=4)
        is_positive = check_state(matrix, strict=self.strict)
        object.__setattr__(self, 'matrix', _freeze(matrix))
        object.__setattr__(self, 'is_positive', is_positive)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    @classmethod
    def coerce(cls, rho: Union[DensityMatrix, MatrixLike]) -> DensityMatrix:
        return rho if isinstance(rho, DensityMatrix) else cls(np.asarray(rho))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def kron(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    a = as_matrix(a, dimension=2)
    b = as_matrix(b, dimension=2)
    return _freeze(np.kron(a, b))


def _partial_transpose(matrix: np.ndarray, subsystem: Subsystem) -> np.ndarray:
    # Works on stacks (..., 4, 4); indices (i j),(k l) of the 2x2 block structure
    blocks = matrix.reshape(matrix.shape[:-2] + (2, 2, 2, 2))
    if subsystem == 'second':
        blocks = blocks.swapaxes(-3, -1)
    elif subsystem == 'first':
        blocks = blocks.swapaxes(-4, -2)
    else:
        raise InputException(f'Subsystem must be "first" or "second", got "{subsystem}".')
    return blocks.reshape(matrix.shape)


def partial_transpose(
    rho: Union[DensityMatrix, MatrixLike], subsystem: Subsystem = 'second'
) -> np.ndarray:
    rho = DensityMatrix.coerce(rho)
    return _freeze(np.ascontiguousarray(_partial_transpose(rho.matrix, subsystem)))


def hermitian_eigenvalues(matrix: MatrixLike) -> np.ndarray:
    """Return the real eigenvalues of a Hermitian 3×3 or 4×4 matrix, ascending."""
    matrix = as_matrix(matrix)
    if matrix.shape[0] not in EIGENSOLVER_DIMENSIONS:
        raise InputException(
            f'Eigenvalues are computed for dimensions {EIGENSOLVER_DIMENSIONS}, '
            f'got {matrix.shape[0]}.'
        )
    deviation = hermiticity_error(matrix)
    if deviation > EIGENSOLVER_HERMITIAN_TOLERANCE:
        raise InputException(f'Matrix is not Hermitian (deviation {deviation:.3g}).')
    return np.linalg.eigvalsh(matrix)


def singular_values(matrix: MatrixLike) -> np.ndarray:
    """Return the singular values of a real 3×3 matrix, descending."""
    matrix = as_matrix(matrix, dimension=3)
    if np.any(matrix.imag != 0.0):
        raise InputException('Singular values are only defined here for real matrices.')
    return np.linalg.svd(matrix.real, compute_uv=False)
