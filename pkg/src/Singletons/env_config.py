# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs.
#
#  fiberpairs is free software: you can redistribute it and/or modify it under the terms of the
#   GNU General Public License as published by the Free Software Foundation, either version 3
#   of the License or any later version.
#
#  fiberpairs is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY;
#   without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR
#   PURPOSE.  See the GNU General Public License for more details.
#
#  You should have received a copy of the GNU General Public License
#   along with fiberpairs.  If not, see <https://www.gnu.org/licenses/>.

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

try:
    from dotenv import load_dotenv  # type: ignore
except ModuleNotFoundError:  # pragma: no cover
    load_dotenv = None

if load_dotenv is not None:
    load_dotenv()


def _as_int(value: Optional[str]) -> Optional[int]:
    if value is None or not value.strip():
        return None
    try:
        return int(value)
    except ValueError:
        return None


@dataclass(frozen=True)
class EnvConfig:
    """Process environment knobs. Everything else lives in the experiment config."""

    OUTPUT_DIR: str = "."
    LOG_LEVEL: str = "INFO"
    LOG_FILE: str = ""
    WORKERS: Optional[int] = None

    @classmethod
    def from_environ(cls) -> "EnvConfig":
        return cls(
            OUTPUT_DIR=os.getenv("FIBERPAIRS_OUTPUT_DIR", ".").strip() or ".",
            LOG_LEVEL=os.getenv("FIBERPAIRS_LOG_LEVEL", "INFO").strip() or "INFO",
            LOG_FILE=os.getenv("FIBERPAIRS_LOG_FILE", "").strip(),
            WORKERS=_as_int(os.getenv("FIBERPAIRS_WORKERS")),
        )
