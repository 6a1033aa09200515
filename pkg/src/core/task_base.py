# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  Part of fiberpairs
#
#  Licensed under the GPL v3 or later.

from __future__ import annotations

import time
from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from typing import Any, ClassVar, Mapping, Optional, TypeVar

from config.models import ExperimentConfig
from Singletons import Logger

from .enums import TaskStatus, Verb
from .exceptions import FiberPairsError
from .file_utils import Table
from .plugin_base import PluginBase
from .registry import registry


@dataclass
class TaskOutput:
    """What a verb produces: CSV tables, a JSON summary and optional console text."""

    tables: dict[str, Table] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)
    text: str = ""


class TaskBase(PluginBase, metaclass=ABCMeta):
    """
    Base class for one CLI verb.

    Provides:
      - Lifecycle management (start, status, duration)
      - Logging & configuration injection
      - Verb metadata checked at registration
    """

    name: ClassVar[str | None] = None
    verb: ClassVar[Verb | None] = None
    description: ClassVar[str | None] = None
    version: ClassVar[str | None] = None
    author: ClassVar[str | None] = None

    def __init__(
        self,
        *,
        config: ExperimentConfig,
        options: Optional[Mapping[str, Any]] = None,
        workers: int = 1,
        origins: Optional[Mapping[str, str]] = None,
        logger: Optional[Logger] = None,
    ) -> None:
        self.config = config
        self.options: dict[str, Any] = dict(options or {})
        self.workers = max(1, int(workers))
        self.origins: dict[str, str] = dict(origins or {})
        self.logger = logger or Logger()

        self._status: TaskStatus = TaskStatus.PENDING
        self._start_time: float = 0.0
        self._duration: float = 0.0
        self._error: str = ""

    @abstractmethod
    async def run(self) -> TaskOutput:
        """Main task execution logic."""

    def option(self, key: str, default: Any = None) -> Any:
        value = self.options.get(key)
        return default if value is None else value

    @property
    def status(self) -> TaskStatus:
        return self._status

    @property
    def duration(self) -> float:
        return self._duration

    @property
    def error(self) -> str:
        return self._error

    def set_error(self, message: str) -> None:
        self._error = message
        self._status = TaskStatus.FAILED
        self.logger.error(f"{self.name}: failed: {message}")

    async def start(self) -> TaskOutput:
        """Runs the task; model errors are recorded and re-raised for the CLI to map to an exit code."""
        self._start_time = time.perf_counter()
        self._status = TaskStatus.RUNNING
        self.logger.info(f"{self.name}: started")
        try:
            output = await self.run()
        except FiberPairsError as e:
            self.set_error(str(e))
            raise
        finally:
            self._duration = time.perf_counter() - self._start_time
        self._status = TaskStatus.COMPLETED
        self.logger.info(f"{self.name}: completed in {self._duration:.2f}s")
        return output


TTask = TypeVar("TTask", bound="TaskBase")


def register_task(cls: type[TTask]) -> type[TTask]:
    """Class decorator to register a verb task."""
    cls.validate_classvars()
    registry.register_task(cls)
    return cls
