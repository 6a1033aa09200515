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

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Sequence

from .enums import ExitCode


class FiberPairsError(Exception):
    """Base exception for fiberpairs errors."""

    exit_code: ClassVar[ExitCode] = ExitCode.MODEL


class UsageError(FiberPairsError):
    """Raised when a verb or flag combination cannot be run."""

    exit_code = ExitCode.USAGE


@dataclass(frozen=True)
class ConfigIssue:
    """One problem found while loading a configuration."""

    key: str
    message: str
    line: int | None = None

    def render(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}{self.key}: {self.message}"


class ConfigurationError(FiberPairsError):
    """Raised when the configuration is invalid. Carries every issue found."""

    exit_code = ExitCode.CONFIG

    def __init__(self, issues: Sequence[ConfigIssue] | str) -> None:
        if isinstance(issues, str):
            issues = [ConfigIssue(key="config", message=issues)]
        self.issues: list[ConfigIssue] = list(issues)
        lines = "\n".join(f"  - {issue.render()}" for issue in self.issues)
        super().__init__(f"Invalid configuration ({len(self.issues)} issue(s)):\n{lines}")


class ModelError(FiberPairsError):
    """Raised when a physical model cannot be evaluated."""

    exit_code = ExitCode.MODEL


class DomainError(ModelError):
    """Raised when an input lies outside the model validity window."""


class PhaseMatchingError(ModelError):
    """Raised when no fundamental-mode phase matching exists."""


class WindowTooNarrowError(ModelError):
    """Raised when a spectrum does not fall to half maximum inside the search window."""


class EnergyConservationError(ModelError):
    """Raised when signal and idler channels are not mirrored about the pump."""


class CarUndefinedError(ModelError):
    """Raised when a CAR is requested from a run without accidentals."""


class EntanglementError(ModelError):
    """Raised when polarization correlation data cannot be evaluated."""


class ExtractionError(FiberPairsError):
    """Raised when mu_p cannot be extracted from coincidence data."""

    exit_code = ExitCode.EXTRACTION
