# manager.py

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Mapping, Optional

from pydantic import ValidationError

from core.exceptions import ConfigIssue, ConfigurationError
from Singletons import Logger

from .defaults import DEFAULT_CONFIG, PRESETS
from .env_loader import apply_environment
from .file_loader import read_config_file
from .merger import merge_layers, unflatten
from .models import ExperimentConfig

logger = Logger()

_UNIT_SUFFIXES = ("_ghz", "_thz", "_mhz", "_hz", "_nm", "_um", "_km", "_m", "_ps", "_ns", "_us", "_s", "_mw", "_w")
_TOP_LEVEL_SCALARS = ("version", "preset")


def _stem(key: str) -> str:
    for suffix in _UNIT_SUFFIXES:
        if key.endswith(suffix):
            return key[: -len(suffix)]
    return key


class ConfigLoader:
    """
    Builds an ExperimentConfig from layered sources, lowest precedence first:
    defaults, preset, file (after ${VAR} substitution), flag overrides.

    Every problem is collected and raised once as a ConfigurationError.
    """

    def __init__(self) -> None:
        self.origins: dict[str, str] = {}
        self._lines: dict[str, int] = {}
        self._issues: list[ConfigIssue] = []

    def load(
        self,
        path: Optional[Path] = None,
        flag_overrides: Optional[Mapping[str, Any]] = None,
        preset: Optional[str] = None,
    ) -> ExperimentConfig:
        self._issues = []
        file_cfg: dict[str, Any] = {}
        if path is not None:
            file_cfg, self._lines = read_config_file(Path(path))
            file_cfg = apply_environment(file_cfg)
            self._check_keys(file_cfg, source="file")

        flags = unflatten(dict(flag_overrides or {}))
        self._check_keys(flags, source="flag")

        preset_name = preset or str(flags.get("preset") or file_cfg.get("preset") or "")
        preset_cfg: dict[str, Any] = {}
        if preset_name:
            if preset_name not in PRESETS:
                known = ", ".join(sorted(PRESETS))
                self._issue("preset", f"unknown preset '{preset_name}' (known: {known})")
            else:
                preset_cfg = {**PRESETS[preset_name], "preset": preset_name}

        merged, self.origins = merge_layers(
            [("default", DEFAULT_CONFIG), ("preset", preset_cfg), ("file", file_cfg), ("flag", flags)]
        )

        config: ExperimentConfig | None = None
        try:
            config = ExperimentConfig(**merged)
        except ValidationError as e:
            for err in e.errors():
                if err["type"] == "extra_forbidden":
                    continue  # already reported by _check_keys
                dotted = ".".join(str(part) for part in err["loc"])
                self._issue(dotted, f"{err['msg']} (invariant violated)")
        if self._issues or config is None:
            raise ConfigurationError(self._issues)

        logger.info(f"Configuration loaded (preset={preset_name or 'none'}, file={path or 'none'})")
        return config

    def _check_keys(self, document: dict[str, Any], *, source: str) -> None:
        for section, body in document.items():
            if section in _TOP_LEVEL_SCALARS:
                continue
            known_section = DEFAULT_CONFIG.get(section)
            if not isinstance(known_section, dict):
                self._issue(section, f"unknown section ({source})", located=source == "file")
                continue
            if not isinstance(body, dict):
                self._issue(section, f"section must be a table ({source})", located=source == "file")
                continue
            for key in body:
                if key in known_section:
                    continue
                dotted = f"{section}.{key}"
                matches = [k for k in known_section if _stem(k) == _stem(key)]
                if matches:
                    self._issue(dotted, f"unit suffix mismatch, expected '{section}.{matches[0]}' ({source})", located=source == "file")
                else:
                    self._issue(dotted, f"unknown key ({source})", located=source == "file")

    def _issue(self, dotted: str, message: str, *, located: bool = True) -> None:
        line = None
        if located and self.origins.get(dotted) != "flag":
            line = self._lines.get(dotted)
            if line is None and "." in dotted:
                line = self._lines.get(dotted.split(".", 1)[0])
        self._issues.append(ConfigIssue(key=dotted, message=message, line=line))


def load_config(path: Optional[Path] = None, flag_overrides: Optional[Mapping[str, Any]] = None) -> ExperimentConfig:
    """Load, merge and validate an experiment configuration."""
    return ConfigLoader().load(path, flag_overrides)


def config_hash(config: ExperimentConfig) -> str:
    """Stable digest of the merged configuration, minus settings that cannot change results."""
    document = config.model_dump(mode="json", exclude={"logging": True, "run": {"workers"}})
    canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
