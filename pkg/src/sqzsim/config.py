"""Run configuration: one JSON document with a section per model stage.

Sections map one-to-one onto the parameter dataclasses: "opo", "noise",
"detection", "analyzer", plus a top-level integer "seed" and optional
"out_dir". Keys starting with an underscore are ignored everywhere, which
is where the shipped config keeps its human-readable notes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .classical_noise import ClassicalNoiseConfig
from .detection import DetectionParams
from .dsp import SweepConfig
from .opo import OpoParams

__all__ = ["ConfigError", "RunConfig", "default_config", "load_config"]

_SECTIONS = {
    "opo": OpoParams,
    "noise": ClassicalNoiseConfig,
    "detection": DetectionParams,
    "analyzer": SweepConfig,
}


class ConfigError(ValueError):
    """Invalid configuration document; the message names the offending key."""


@dataclass(frozen=True)
class RunConfig:
    opo: OpoParams = field(default_factory=OpoParams)
    noise: ClassicalNoiseConfig = field(default_factory=ClassicalNoiseConfig)
    detection: DetectionParams = field(default_factory=DetectionParams)
    analyzer: SweepConfig = field(default_factory=SweepConfig)
    seed: int | None = 1064
    out_dir: str = "."

    def require_seed(self) -> int:
        if self.seed is None:
            raise ConfigError(
                "key 'seed': a seed is required for stochastic commands "
                "(set it in the config or pass --seed)"
            )
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"key 'seed': must fit in u64, got {self.seed}")
        return int(self.seed)


def default_config() -> RunConfig:
    """The shipped defaults (also serialized in configs/defaults.json)."""
    return RunConfig()


def _strip_notes(doc):
    if isinstance(doc, dict):
        return {k: _strip_notes(v) for k, v in doc.items() if not k.startswith("_")}
    return doc


def _build_section(name: str, cls, payload) -> object:
    if not isinstance(payload, dict):
        raise ConfigError(f"key '{name}': expected an object of parameters")
    known = set(cls.__dataclass_fields__)
    for key in payload:
        if key not in known:
            raise ConfigError(f"key '{name}.{key}': unknown parameter")
    try:
        return cls(**payload)
    except ValueError as exc:
        raise ConfigError(f"key '{name}': {exc}") from exc


def config_from_dict(doc: dict) -> RunConfig:
    doc = _strip_notes(doc)
    if not isinstance(doc, dict):
        raise ConfigError("configuration root must be a JSON object")
    kwargs = {}
    for name, cls in _SECTIONS.items():
        if name in doc:
            kwargs[name] = _build_section(name, cls, doc.pop(name))
    if "seed" in doc:
        seed = doc.pop("seed")
        if seed is not None and not isinstance(seed, int):
            raise ConfigError(f"key 'seed': expected an integer, got {seed!r}")
        kwargs["seed"] = seed
    if "out_dir" in doc:
        kwargs["out_dir"] = str(doc.pop("out_dir"))
    if doc:
        raise ConfigError(f"key '{sorted(doc)[0]}': unknown section")
    return RunConfig(**kwargs)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(doc)
