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

"""Stats Stack
Process-wide run counters (pulses simulated, clicks recorded, segments done).
Simulation segments update it from worker threads.
"""

from __future__ import annotations

import threading
from typing import ClassVar, Dict


class Stack:
    """Singleton counter store."""

    _instance: ClassVar["Stack | None"] = None
    _lock: ClassVar[threading.Lock] = threading.Lock()

    def __new__(cls) -> "Stack":
        with cls._lock:
            if cls._instance is None:
                cls._instance = super(Stack, cls).__new__(cls)
                cls._instance._stats = {}
        return cls._instance

    def add_counter(self, name: str, value: int = 1) -> int:
        with self._lock:
            self._stats[name] = self._stats.get(name, 0) + int(value)
            return self._stats[name]

    def get_counter(self, name: str) -> int:
        return self._stats.get(name, 0)

    def reset_all(self) -> Dict[str, int]:
        with self._lock:
            self._stats.clear()
        return self._stats

    def get_all(self) -> Dict[str, int]:
        return dict(self._stats)
