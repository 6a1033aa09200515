# merger.py

from __future__ import annotations

from typing import Any, Iterable


def merge_configs(
    base: dict[str, Any],
    override: dict[str, Any],
    *,
    layer: str = "",
    origins: dict[str, str] | None = None,
    _prefix: str = "",
) -> dict[str, Any]:
    """Deep-merge override into base. Records the layer name of every leaf it sets."""
    result = dict(base)
    for k, v in override.items():
        path = f"{_prefix}{k}"
        if isinstance(v, dict) and isinstance(result.get(k), dict):
            result[k] = merge_configs(result[k], v, layer=layer, origins=origins, _prefix=f"{path}.")
        else:
            result[k] = v
            if origins is not None:
                origins[path] = layer
    return result


def merge_layers(layers: Iterable[tuple[str, dict[str, Any]]]) -> tuple[dict[str, Any], dict[str, str]]:
    """Merge (name, document) layers lowest precedence first."""
    merged: dict[str, Any] = {}
    origins: dict[str, str] = {}
    for name, document in layers:
        merged = merge_configs(merged, document, layer=name, origins=origins)
    return merged, origins


def unflatten(overrides: dict[str, Any]) -> dict[str, Any]:
    """{"fiber.length_m": 3.8} -> {"fiber": {"length_m": 3.8}}"""
    nested: dict[str, Any] = {}
    for dotted, value in overrides.items():
        parts = dotted.split(".")
        node = nested
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = value
    return nested


def flatten(document: dict[str, Any], _prefix: str = "") -> dict[str, Any]:
    """{"fiber": {"length_m": 3.8}} -> {"fiber.length_m": 3.8}"""
    flat: dict[str, Any] = {}
    for key, value in document.items():
        path = f"{_prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, f"{path}."))
        else:
            flat[path] = value
    return flat
