from __future__ import annotations

import sys
from pathlib import Path

import pytest

TESTS_PATH = Path(__file__).resolve().parent
SRC_PATH = Path(__file__).resolve().parents[1] / "src"

while str(TESTS_PATH) in sys.path:
    sys.path.remove(str(TESTS_PATH))
if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

from config.defaults import DEFAULT_CONFIG, SMF28_DATASHEET_FIBER  # noqa: E402
from config.models import ExperimentConfig, FiberSpec, PumpSpec  # noqa: E402


@pytest.fixture
def config() -> ExperimentConfig:
    """Built-in defaults: 11.4 m fiber, 3 W pump, 400 GHz channels."""
    return ExperimentConfig(**DEFAULT_CONFIG)


@pytest.fixture
def fiber(config: ExperimentConfig) -> FiberSpec:
    return config.fiber


@pytest.fixture
def datasheet_fiber(config: ExperimentConfig) -> FiberSpec:
    return config.fiber.model_copy(update=SMF28_DATASHEET_FIBER)


@pytest.fixture
def pump(config: ExperimentConfig) -> PumpSpec:
    return config.pump
