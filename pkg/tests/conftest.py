from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracle module

from arfuture.corpus import parse_corpus_file
from arfuture.resources import data_dir, load_engine


@pytest.fixture(scope="session")
def engine():
    return load_engine()


@pytest.fixture(scope="session")
def lexicons(engine):
    return engine.lexicons


@pytest.fixture(scope="session")
def ruleset(engine):
    return engine.ruleset


@pytest.fixture(scope="session")
def rules_by_id(ruleset):
    return {r.id: r for r in ruleset}


@pytest.fixture(scope="session")
def mini_gold_dir():
    return data_dir() / "mini_gold"


@pytest.fixture(scope="session")
def mini_docs(mini_gold_dir):
    return [
        parse_corpus_file(p.read_text(encoding="utf-8"))
        for p in sorted(mini_gold_dir.glob("*.corpus.txt"))
    ]
