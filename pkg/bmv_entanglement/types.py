from dataclasses import dataclass
import math
from typing import Dict, Optional, Union


class ModelException(Exception):
    pass


class InputException(ModelException):
    pass


class DomainException(ModelException):
    pass


class FluctuationWarning(UserWarning):
    pass


ReportValue = Optional[Union[float, int, bool, str]]
ReportDict = Dict[str, ReportValue]


@dataclass(frozen=True)
class SimPoint:
    """A point of the dimensionless model: coupling ω = ΔT/ħ and time t in units of T."""

    omega: float
    t: float

    def __post_init__(self) -> None:
        for name, value in (('omega', self.omega), ('t', self.t)):
            if not math.isfinite(value):
                raise InputException(f'SimPoint {name} must be finite, got {value}.')
            if value < 0.0:
                raise InputException(f'SimPoint {name} must be non-negative, got {value}.')


class Report:
    def to_dict(self) -> ReportDict:
        raise NotImplementedError

    def to_string(self) -> str:
        return '\n'.join(f'{key}: {value}' for key, value in self.to_dict().items())
