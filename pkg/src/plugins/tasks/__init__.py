# __init__.py

from .bandwidth import BandwidthTask
from .bell import BellTask
from .calibrate import CalibrateTask
from .dispersion import DispersionTask
from .explain import ExplainTask
from .mu_extract import MuExtractTask
from .phase_match import PhaseMatchTask
from .simulate import SimulateTask
from .spectrum import SpectrumTask
from .sweep import SweepTask

__all__ = [
    "BandwidthTask",
    "BellTask",
    "CalibrateTask",
    "DispersionTask",
    "ExplainTask",
    "MuExtractTask",
    "PhaseMatchTask",
    "SimulateTask",
    "SpectrumTask",
    "SweepTask",
]
