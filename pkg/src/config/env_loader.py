# env_loader.py

from __future__ import annotations

import os
import re
from typing import Any

try:
    from dotenv import load_dotenv  # type: ignore
except ModuleNotFoundError:  # pragma: no cover
    load_dotenv = None

if load_dotenv is not None:
    load_dotenv()  # executed on import if available

_REFERENCE = re.compile(r"^\$\{([A-Za-z_][A-Za-z0-9_]*)(?::-(.*))?\}$")


def apply_environment(cfg: dict[str, Any]) -> dict[str, Any]:
    """
    Replace "${VAR}" and "${VAR:-default}" string values with environment variables.
    Unset variables without a default keep the literal so validation can report it.
    """

    def resolve(value: Any) -> Any:
        if not isinstance(value, str):
            return value
        match = _REFERENCE.match(value.strip())
        if not match:
            return value
        name, fallback = match.groups()
        return os.getenv(name, fallback if fallback is not None else value)

    def walk(obj: Any) -> Any:
        if isinstance(obj, dict):
            return {k: walk(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [walk(v) for v in obj]
        return resolve(obj)

    return walk(cfg)
