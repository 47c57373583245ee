"""Locating and loading the bundled data files.

The ``SLCSAS_DATA_DIR`` environment variable points the whole toolchain at
an alternative data directory (same file names) without code changes.
"""

from __future__ import annotations

import os
from importlib import resources as importlib_resources
from pathlib import Path

from .engine import Engine
from .morpho import Lexicons, load_lexicons, merge_lexicons
from .rules import (
    LinguisticRule,
    SemanticCategory,
    VariableTable,
    parse_rules,
    parse_semantic_map,
    parse_variable_defs,
)
from .segment import DEFAULT_BOUNDARIES

DATA_DIR_ENV = "SLCSAS_DATA_DIR"

RULES_FILE = "rules_future_ar.txt"
VARIABLES_FILE = "variables_ar.txt"
SEMANTIC_MAP_FILE = "semantic_map.txt"
KEYWORDS_FILE = "keywords.tsv"


def data_dir() -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(str(importlib_resources.files("arfuture").joinpath("data")))


def load_ruleset(
    rules_path: str | Path,
    variables_path: str | Path,
    semantic_map_path: str | Path,
) -> tuple[list[LinguisticRule], VariableTable, list[SemanticCategory]]:
    variables = parse_variable_defs(Path(variables_path).read_text(encoding="utf-8"))
    semantic_map = parse_semantic_map(Path(semantic_map_path).read_text(encoding="utf-8"))
    ruleset = parse_rules(
        Path(rules_path).read_text(encoding="utf-8"), variables, semantic_map
    )
    return ruleset, variables, semantic_map


def load_engine(
    rules_path: str | Path | None = None,
    variables_path: str | Path | None = None,
    semantic_map_path: str | Path | None = None,
    lexicon_dir: str | Path | None = None,
    *,
    boundaries: frozenset[str] = DEFAULT_BOUNDARIES,
    punct_transparent: bool = True,
) -> Engine:
    """Build an Engine, falling back to the bundled data for missing paths.

    An explicit ``lexicon_dir`` extends (not replaces) the bundled lexicons.
    """
    base = data_dir()
    ruleset, _, _ = load_ruleset(
        rules_path or base / RULES_FILE,
        variables_path or base / VARIABLES_FILE,
        semantic_map_path or base / SEMANTIC_MAP_FILE,
    )
    lexicons: Lexicons = load_lexicons(base)
    if lexicon_dir is not None:
        lexicons = merge_lexicons(lexicons, load_lexicons(lexicon_dir))
    return Engine(
        ruleset,
        lexicons,
        boundaries=boundaries,
        punct_transparent=punct_transparent,
    )
