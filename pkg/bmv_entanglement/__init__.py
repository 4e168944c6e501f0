from bmv_entanglement.design import DesignReport, run_design
from bmv_entanglement.fluctuations import FluctuationSpec
from bmv_entanglement.linalg import DensityMatrix
from bmv_entanglement.model import PhysicalParams
from bmv_entanglement.sweep import run_sweep, SweepRequest
from bmv_entanglement.types import DomainException, InputException, ModelException, SimPoint

__all__ = [
    'DensityMatrix',
    'DesignReport',
    'DomainException',
    'FluctuationSpec',
    'InputException',
    'ModelException',
    'PhysicalParams',
    'run_design',
    'run_sweep',
    'SimPoint',
    'SweepRequest',
]
