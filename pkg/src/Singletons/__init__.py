#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs, licensed under the GNU General Public License v3 or later.

from .env_config import EnvConfig
from .logger import Logger
from .stack import Stack

__all__ = (
    "EnvConfig",
    "Logger",
    "Stack",
)
