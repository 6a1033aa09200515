# file_loader.py

from __future__ import annotations

import json
import re
import tomllib
from pathlib import Path
from typing import Any

from core.exceptions import ConfigIssue, ConfigurationError
from Singletons import Logger

ENCODING = "utf-8"
logger = Logger()

_SECTION = re.compile(r"^\s*\[\s*([A-Za-z0-9_.-]+)\s*\]\s*(?:#.*)?$")
_TOML_KEY = re.compile(r"^\s*([A-Za-z0-9_-]+)\s*=")
_JSON_KEY = re.compile(r'^\s*"([A-Za-z0-9_-]+)"\s*:\s*(\{)?')
_TOML_LINE = re.compile(r"line (\d+)")


def read_config_file(path: Path) -> tuple[dict[str, Any], dict[str, int]]:
    """
    Reads a TOML or JSON config file.

    Returns the parsed document and a map of "section.key" to 1-based line
    number, used to point validation errors back into the file.
    """
    if not path.exists():
        raise ConfigurationError([ConfigIssue(key=str(path), message="config file not found")])

    text = path.read_text(encoding=ENCODING)
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigurationError([ConfigIssue(key=str(path), message=e.msg, line=e.lineno)]) from e
        lines = locate_json_keys(text)
    else:
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as e:
            match = _TOML_LINE.search(str(e))
            line = int(match.group(1)) if match else None
            raise ConfigurationError([ConfigIssue(key=str(path), message=str(e), line=line)]) from e
        lines = locate_toml_keys(text)

    if not isinstance(data, dict):
        raise ConfigurationError([ConfigIssue(key=str(path), message="top level must be a table")])
    logger.debug(f"Read config file {path} ({len(lines)} keys located)")
    return data, lines


def locate_toml_keys(text: str) -> dict[str, int]:
    located: dict[str, int] = {}
    section = ""
    for number, raw in enumerate(text.splitlines(), start=1):
        header = _SECTION.match(raw)
        if header:
            section = header.group(1)
            located.setdefault(section, number)
            continue
        key = _TOML_KEY.match(raw)
        if key:
            name = f"{section}.{key.group(1)}" if section else key.group(1)
            located.setdefault(name, number)
    return located


def locate_json_keys(text: str) -> dict[str, int]:
    """Best effort for the two-level documents this project uses."""
    located: dict[str, int] = {}
    section = ""
    depth = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        key = _JSON_KEY.match(raw)
        if key:
            if key.group(2) and depth <= 1:
                section = key.group(1)
                located.setdefault(section, number)
            else:
                name = f"{section}.{key.group(1)}" if section and depth >= 2 else key.group(1)
                located.setdefault(name, number)
        depth += raw.count("{") - raw.count("}")
        if depth <= 1:
            section = "" if not (key and key.group(2)) else section
    return located
