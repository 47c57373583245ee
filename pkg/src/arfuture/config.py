"""Shared run configuration for the command-line pipeline.

The config file is a flat ``key = value`` text file; command-line flags
override file values.  Recognized keys mirror the flag names:
``min_run_chars``, ``boundaries`` (comma-separated trigger names),
``strict_adjacency``, ``lexicon_dir``, ``rules_path``, ``variables_path``,
``semantic_map_path``, ``parallelism``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .corpus import DEFAULT_MIN_RUN_CHARS
from .segment import (
    BOUNDARY_DOT,
    BOUNDARY_EXCLAM,
    BOUNDARY_NEWLINE,
    BOUNDARY_QMARK,
    DEFAULT_BOUNDARIES,
)

_VALID_BOUNDARIES = {BOUNDARY_DOT, BOUNDARY_QMARK, BOUNDARY_EXCLAM, BOUNDARY_NEWLINE}
_TRUE_WORDS = {"1", "true", "yes", "on"}
_FALSE_WORDS = {"0", "false", "no", "off"}


class ConfigError(ValueError):
    """Bad key, value or path in a configuration source."""


@dataclass
class Config:
    min_run_chars: int = DEFAULT_MIN_RUN_CHARS
    boundaries: frozenset[str] = DEFAULT_BOUNDARIES
    strict_adjacency: bool = False
    lexicon_dir: Path | None = None
    rules_path: Path | None = None
    variables_path: Path | None = None
    semantic_map_path: Path | None = None
    parallelism: int = 1
    show_all_negative_fields: bool = False
    extra: dict[str, str] = dc_field(default_factory=dict)

    def validate(self) -> "Config":
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")
        if self.min_run_chars < 1:
            raise ConfigError("min_run_chars must be >= 1")
        bad = self.boundaries - _VALID_BOUNDARIES
        if bad:
            raise ConfigError(f"unknown boundary trigger(s): {', '.join(sorted(bad))}")
        for name in ("lexicon_dir", "rules_path", "variables_path", "semantic_map_path"):
            value = getattr(self, name)
            if value is not None and not Path(value).exists():
                raise ConfigError(f"{name} does not exist: {value}")
        return self


def parse_boundaries(spec: str) -> frozenset[str]:
    names = frozenset(n.strip() for n in spec.split(",") if n.strip())
    bad = names - _VALID_BOUNDARIES
    if bad:
        raise ConfigError(f"unknown boundary trigger(s): {', '.join(sorted(bad))}")
    return names


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.lower()
    if lowered in _TRUE_WORDS:
        return True
    if lowered in _FALSE_WORDS:
        return False
    raise ConfigError(f"bad boolean for {key}: {value!r}")


def load_config(path: str | Path) -> Config:
    """Read a flat key=value config file."""
    cfg = Config()
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "min_run_chars":
            cfg.min_run_chars = int(value)
        elif key == "boundaries":
            cfg.boundaries = parse_boundaries(value)
        elif key == "strict_adjacency":
            cfg.strict_adjacency = _parse_bool(value, key)
        elif key == "show_all_negative_fields":
            cfg.show_all_negative_fields = _parse_bool(value, key)
        elif key == "lexicon_dir":
            cfg.lexicon_dir = Path(value)
        elif key == "rules_path":
            cfg.rules_path = Path(value)
        elif key == "variables_path":
            cfg.variables_path = Path(value)
        elif key == "semantic_map_path":
            cfg.semantic_map_path = Path(value)
        elif key == "parallelism":
            cfg.parallelism = int(value)
        else:
            cfg.extra[key] = value
    return cfg.validate()
