# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Explain Task: every resolved parameter with its origin and provenance."""

from __future__ import annotations

from config.defaults import PROVENANCE
from config.merger import flatten
from core.enums import Verb
from core.file_utils import Table, format_cell
from core.task_base import TaskBase, TaskOutput, register_task

HEADER = ("key", "value", "origin", "provenance", "note")


@register_task
class ExplainTask(TaskBase):
    name = "explain"
    verb = Verb.EXPLAIN
    description = "Resolved configuration with provenance markers."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        resolved = flatten(self.config.model_dump(mode="json"))
        rows = []
        for key in sorted(resolved):
            provenance, note = PROVENANCE.get(key, (None, ""))
            origin = self.origins.get(key, "default")
            rows.append((key, resolved[key], origin, provenance, note))

        width = max(len(key) for key, *_ in rows)
        lines = [
            f"{key:<{width}}  {format_cell(value):>14}  [{origin}]  {provenance or '-'}  {note}".rstrip()
            for key, value, origin, provenance, note in rows
        ]
        return TaskOutput(
            tables={"parameters": Table(HEADER, rows)},
            summary={"parameters": len(rows), "overridden": [row[0] for row in rows if row[2] != "default"]},
            text="\n".join(lines) + "\n",
        )
