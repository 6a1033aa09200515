# __init__.py

from .manager import ConfigLoader, config_hash, load_config
from .models import (
    ChannelSpec,
    DetectorSpec,
    ExperimentConfig,
    FiberSpec,
    PumpSpec,
    RunSpec,
)

__all__ = [
    "ChannelSpec",
    "ConfigLoader",
    "DetectorSpec",
    "ExperimentConfig",
    "FiberSpec",
    "PumpSpec",
    "RunSpec",
    "config_hash",
    "load_config",
]
