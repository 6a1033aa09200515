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

import csv
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from Singletons import Logger

ENCODING = "utf-8"


@dataclass(frozen=True)
class Table:
    """Rows destined for one CSV file."""

    header: tuple[str, ...]
    rows: list[tuple[Any, ...]] = field(default_factory=list)


def to_plain(value: Any) -> Any:
    """Converts numpy scalars/arrays, enums and tuples into JSON-ready values."""
    if isinstance(value, dict):
        return {str(to_plain(k)): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_plain(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        return number if math.isfinite(number) else None
    return value


def format_cell(value: Any) -> str:
    """Shortest round-trip text for a CSV cell; empty for gaps."""
    plain = to_plain(value)
    if plain is None:
        return ""
    if isinstance(plain, bool):
        return "true" if plain else "false"
    if isinstance(plain, float):
        return repr(plain)
    return str(plain)


class OutputWriter:
    """
    Writes run artifacts into one directory.

    Output is byte-stable: JSON keys sorted, floats in shortest repr, no
    timestamps, LF line endings.
    """

    def __init__(self, output_dir: Path) -> None:
        self.output_dir = Path(output_dir)
        self.logger = Logger()
        self.written: list[Path] = []

    def _target(self, name: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path = self._target(name)
        with path.open("w", encoding=ENCODING, newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_cell(v) for v in row])
        self.written.append(path)
        self.logger.info(f"Wrote {path}")
        return path

    def write_table(self, name: str, table: Table) -> Path:
        return self.write_csv(name, table.header, table.rows)

    def write_json(self, name: str, payload: dict[str, Any]) -> Path:
        path = self._target(name)
        text = json.dumps(to_plain(payload), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)
        path.write_text(text + "\n", encoding=ENCODING)
        self.written.append(path)
        self.logger.info(f"Wrote {path}")
        return path


def read_json(path: Path) -> dict[str, Any]:
    return json.loads(Path(path).read_text(encoding=ENCODING))
