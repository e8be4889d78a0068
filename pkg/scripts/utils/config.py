"""Configuration loading with project and environment overrides."""

import json
import os
from pathlib import Path
from typing import Any

# Environment variable -> (config path, type)
ENV_OVERRIDES = {
    "SYNCTRANS_DEPTH_BOUND": (("bounds", "depth"), int),
    "SYNCTRANS_REMAINDER_BOUND": (("bounds", "remainder"), int),
    "SYNCTRANS_MAX_K": (("bounds", "max_k"), int),
    "SYNCTRANS_DEBUG": (("debug",), bool),
}


def load_config(cwd: str, install_root: str | None = None) -> dict[str, Any]:
    """
    Load configuration with project and environment overrides.

    Priority:
    1. Environment: SYNCTRANS_DEPTH_BOUND, SYNCTRANS_REMAINDER_BOUND,
       SYNCTRANS_MAX_K, SYNCTRANS_DEBUG
    2. Project config: {cwd}/.synctrans/config.json
    3. Default config: {install_root}/config/default_config.json
    """
    config = {}

    # Load default config
    if install_root:
        default_path = Path(install_root) / "config" / "default_config.json"
    else:
        default_path = Path(__file__).parent.parent.parent / "config" / "default_config.json"

    if default_path.exists():
        with open(default_path) as f:
            config = json.load(f)

    # Load project overrides
    project_config_path = Path(cwd) / ".synctrans" / "config.json"
    if project_config_path.exists():
        with open(project_config_path) as f:
            project_config = json.load(f)
        config = deep_merge(config, project_config)

    return apply_env_overrides(config, os.environ)


def _parse_env(raw: str, kind: type) -> Any:
    if kind is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return kind(raw)


def apply_env_overrides(config: dict[str, Any], environ) -> dict[str, Any]:
    """Overlay SYNCTRANS_* variables; unparseable values are ignored."""
    result = config
    for name, (path, kind) in ENV_OVERRIDES.items():
        raw = environ.get(name)
        if raw is None or raw == "":
            continue
        try:
            value = _parse_env(raw, kind)
        except ValueError:
            continue
        override: dict[str, Any] = {path[-1]: value}
        for key in reversed(path[:-1]):
            override = {key: override}
        result = deep_merge(result, override)
    return result


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Deep merge override into base config."""
    result = base.copy()

    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value

    return result


def get_config_value(config: dict[str, Any], *keys: str, default: Any = None) -> Any:
    """Get nested config value with dot-path support."""
    current = config

    for key in keys:
        if isinstance(current, dict) and key in current:
            current = current[key]
        else:
            return default

    return current
