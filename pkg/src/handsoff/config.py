"""Operator configuration: key=value file, HANDSOFF_* environment variables,
then command-line flags, later sources winning."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from .classifier import ClassifierConfig, GestureClass

ENV_PREFIX = "HANDSOFF_"


class BadConfig(ValueError):
    pass


@dataclass(frozen=True)
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8787
    storage_dir: str = "handsoff-data"
    confidence_threshold: float = 0.90
    dwell_frames: int = 3
    grace_frames: int = 5
    payload_cap: int = 16 * 1024 * 1024
    chunks_per_frame: int = 1
    sender_notifications: bool = True
    voice_event_logging: bool = True
    classifier_thresholds: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise BadConfig(f"port {self.port} out of range")

    def classifier_config(self) -> ClassifierConfig:
        if not self.classifier_thresholds:
            return ClassifierConfig()
        return ClassifierConfig.from_dict({"thresholds": self.classifier_thresholds})


_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def _coerce(name: str, raw: str, target_type: type):
    if target_type is bool:
        lowered = raw.strip().lower()
        if lowered in _BOOL_TRUE:
            return True
        if lowered in _BOOL_FALSE:
            return False
        raise BadConfig(f"{name}: expected a boolean, got {raw!r}")
    try:
        return target_type(raw)
    except ValueError:
        raise BadConfig(f"{name}: expected {target_type.__name__}, got {raw!r}") from None


def parse_config_file(path: str | Path) -> dict:
    """Parse `key=value` lines; `classifier_threshold.<gesture>` keys collect
    into the classifier threshold map. Blank lines and # comments skipped."""
    values: dict = {}
    thresholds: dict[str, float] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise BadConfig(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key.startswith("classifier_threshold."):
            gesture = key.split(".", 1)[1]
            GestureClass(gesture)  # validates the name
            thresholds[gesture] = _coerce(key, raw, float)
        else:
            values[key] = raw
    if thresholds:
        values["classifier_thresholds"] = thresholds
    return values


def load_app_config(
    config_path: str | Path | None = None,
    cli_overrides: dict | None = None,
    env: dict | None = None,
) -> AppConfig:
    env = os.environ if env is None else env
    merged: dict = {}
    if config_path is not None:
        merged.update(parse_config_file(config_path))
    for f in fields(AppConfig):
        env_key = ENV_PREFIX + f.name.upper()
        if env_key in env and f.name != "classifier_thresholds":
            merged[f.name] = env[env_key]
    for key, value in (cli_overrides or {}).items():
        if value is not None:
            merged[key] = value

    kwargs = {}
    by_name = {f.name: f for f in fields(AppConfig)}
    for key, value in merged.items():
        f = by_name.get(key)
        if f is None:
            raise BadConfig(f"unknown configuration key {key!r}")
        if key == "classifier_thresholds":
            kwargs[key] = value
        elif isinstance(value, str):
            kwargs[key] = _coerce(key, value, type(getattr(AppConfig(), key)))
        else:
            kwargs[key] = value
    return AppConfig(**kwargs)
