"""
Configuration management for kqlab.

Caps and harness settings live in a single dataclass. Values come from a
profile preset (selected by the KQLAB_PROFILE environment variable), then an
optional "key value" configuration file, then command-line overrides.
"""

import os
from dataclasses import dataclass, field, fields, replace
from typing import Dict, List, Optional

from .errors import ConfigError

PROFILE_ENV = "KQLAB_PROFILE"

ALL_SCENARIOS = ["S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8", "S9", "S10"]

# Caps of the "default" profile are the validated range.
PROFILES: Dict[str, Dict[str, int]] = {
    "small": {
        "trunc_dim": 2,
        "ex_stages": 1,
        "horn_dim": 2,
        "small_horn_dim": 2,
        "round_cap": 2,
        "max_cells": 5000,
        "max_maps": 50000,
        "collapse_budget": 500,
        "bidegree_cap": 3,
    },
    "default": {},
    "large": {
        "trunc_dim": 4,
        "ex_stages": 3,
        "horn_dim": 4,
        "small_horn_dim": 3,
        "round_cap": 4,
        "max_cells": 200000,
        "max_maps": 2000000,
        "collapse_budget": 20000,
        "bidegree_cap": 5,
    },
}

_LIST_FIELDS = ("scenarios", "disable")
_CHOICES = {
    "format": ("json", "text"),
    "loglevel": ("debug", "info", "warning", "error"),
    "profile": tuple(PROFILES),
}


@dataclass
class Config:
    """Resource caps and harness settings."""

    profile: str = "default"

    # Truncation and tower caps
    trunc_dim: int = 3
    ex_stages: int = 2
    top_dim_cap: int = 8

    # Horn / boundary dimension caps (S5-S7 and S3/S9)
    horn_dim: int = 3
    small_horn_dim: int = 2

    # Small object argument
    round_cap: int = 3

    # Size caps
    max_cells: int = 20000
    max_maps: int = 200000
    collapse_budget: int = 2000
    bidegree_cap: int = 4

    # Harness
    scenarios: List[str] = field(default_factory=lambda: list(ALL_SCENARIOS))
    disable: List[str] = field(default_factory=list)
    workers: int = 1
    format: str = "json"
    report_path: str = ""

    # Logging
    loglevel: str = "info"

    @classmethod
    def for_profile(cls, profile: Optional[str] = None) -> "Config":
        """Build the preset named by `profile` or by the environment."""
        name = (profile or os.environ.get(PROFILE_ENV) or "default").strip().lower()
        if name not in PROFILES:
            raise ConfigError(f"unknown profile '{name}'", field=PROFILE_ENV)
        return replace(cls(profile=name), **PROFILES[name])

    @classmethod
    def from_file(cls, filepath: str, base: Optional["Config"] = None) -> "Config":
        """Load configuration from a file of "key value" lines."""
        config = base if base is not None else cls.for_profile()
        if not os.path.exists(filepath):
            raise ConfigError(f"config file not found: {filepath}")
        with open(filepath, "r") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split(None, 1)
                key = parts[0].lower()
                value = parts[1] if len(parts) == 2 else ""
                config = config.with_value(key, value, line=lineno)
        config.validate()
        return config

    def with_value(self, key: str, value: str, line: Optional[int] = None) -> "Config":
        """Return a copy with one field parsed from its textual value."""
        known = {f.name for f in fields(self)}
        if key not in known:
            raise ConfigError("unknown setting", line=line, field=key)
        if key == "profile":
            preset = Config.for_profile(value)
            keep = {f.name: getattr(self, f.name) for f in fields(self)
                    if f.name not in PROFILES[preset.profile] and f.name != "profile"}
            return replace(preset, **keep)
        current = getattr(self, key)
        if key in _LIST_FIELDS:
            parsed = [item.upper() for item in value.replace(",", " ").split()]
        elif isinstance(current, int):
            try:
                parsed = int(value)
            except ValueError:
                raise ConfigError(f"expected an integer, got '{value}'", line=line, field=key)
        else:
            parsed = value.strip().strip('"')
            if key in _CHOICES and parsed not in _CHOICES[key]:
                raise ConfigError(f"expected one of {', '.join(_CHOICES[key])}",
                                  line=line, field=key)
        return replace(self, **{key: parsed})

    def validate(self) -> None:
        """Reject caps outside the supported range."""
        for name in ("trunc_dim", "top_dim_cap", "horn_dim", "small_horn_dim",
                     "max_cells", "max_maps", "bidegree_cap", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError("must be at least 1", field=name)
        for name in ("ex_stages", "round_cap", "collapse_budget"):
            if getattr(self, name) < 0:
                raise ConfigError("must be non-negative", field=name)
        for name in _LIST_FIELDS:
            for sid in getattr(self, name):
                if sid not in ALL_SCENARIOS:
                    raise ConfigError(f"unknown scenario '{sid}'", field=name)
        if self.trunc_dim > self.top_dim_cap:
            raise ConfigError("trunc_dim exceeds top_dim_cap", field="trunc_dim")

    @property
    def enabled_scenarios(self) -> List[str]:
        """Scenario ids to run, in canonical order."""
        wanted = set(self.scenarios) - set(self.disable)
        return [sid for sid in ALL_SCENARIOS if sid in wanted]

    @property
    def beyond_validated_range(self) -> bool:
        """True when any cap exceeds the default preset."""
        reference = Config()
        for name in PROFILES["large"]:
            if getattr(self, name) > getattr(reference, name):
                return True
        return False
