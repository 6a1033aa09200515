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

import logging
from logging import FileHandler, Formatter, getLogger, Logger as PyLogger
from typing import ClassVar

from rich.console import Console
from rich.logging import RichHandler

from .env_config import EnvConfig

LOGGER_NAME = "fiberpairs"


class Logger:
    """
    Thin wrapper around the "fiberpairs" stdlib logger.

    Console output goes to stderr through rich so that tables and CSV written
    to stdout stay clean. Handlers are installed once per process; every
    Logger() instance shares them.
    """

    _configured: ClassVar[bool] = False
    log_format: ClassVar[str] = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

    def __init__(self) -> None:
        self.logger = getLogger(LOGGER_NAME)
        if not Logger._configured:
            env = EnvConfig.from_environ()
            self.configure(level=env.LOG_LEVEL, log_file=env.LOG_FILE)

    def configure(self, level: str | int = "INFO", log_file: str = "") -> None:
        """(Re)installs the handlers. Called again by the CLI once the config is known."""
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)

        numeric = self._translate_loglevel(level)
        self.logger.setLevel(numeric)
        self.logger.propagate = False

        console = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=False,
            markup=False,
        )
        console.setLevel(numeric)
        self.logger.addHandler(console)

        if log_file:
            file_handler = FileHandler(log_file, encoding="utf-8")
            file_handler.setLevel(numeric)
            file_handler.setFormatter(Formatter(self.log_format))
            self.logger.addHandler(file_handler)

        Logger._configured = True

    @staticmethod
    def _translate_loglevel(level: str | int) -> int:
        if isinstance(level, int):
            return level
        return logging.getLevelNamesMapping().get(str(level).upper(), logging.INFO)

    def debug(self, message: str) -> None:
        self.logger.debug(message)

    def info(self, message: str) -> None:
        self.logger.info(message)

    def warning(self, message: str) -> None:
        self.logger.warning(message)

    def error(self, message: str) -> None:
        self.logger.error(message)

    def get_log_level(self) -> str:
        return logging.getLevelName(self.logger.level)

    def get_logger(self) -> PyLogger:
        return self.logger
