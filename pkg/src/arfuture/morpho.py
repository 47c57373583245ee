"""Lightweight verb-tense verdicts for Arabic tokens.

Replaces a full morpho-syntactic analyzer with lexicon lookups plus an
imperfective-prefix heuristic.  The point is to decide whether a token is
a present-tense verb, in particular after stripping a leading conjunction
clitic and/or a future-marking siin prefix.  Lexicon files are plain text
and user-extensible, so precision can be tuned without touching code.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

SIIN = "س"  # س
CONJUNCTION_CLITICS = ("و", "ف")  # و ف
# letters that open an imperfective (present-tense) verb: ي ت ن أ
IMPERFECTIVE_PREFIXES = frozenset({"ي", "ت", "ن", "أ"})
TA_SUFFIX = "ت"  # ت

#: minimum letters a stem must keep after its imperfective prefix; blocks
#: two-letter nouns such as يد from passing as verbs.
MIN_STEM_AFTER_PREFIX = 3


class Verdict(Enum):
    PRESENT_VERB = "present_verb"
    PAST_VERB = "past_verb"
    PROPER_NOUN = "proper_noun"
    OTHER = "other"


@dataclass(frozen=True)
class MorphVerdict:
    token: str
    verdict: Verdict
    stripped_clitics: str
    stem: str


@dataclass(frozen=True)
class Lexicons:
    """Immutable word lists backing the verdicts.

    ``proper_nouns`` is the stoplist of siin-initial names that would
    otherwise look like future verbs.  ``qad_exclusions`` lists verbs that
    should not count as future after the qad particle; it is empty by
    default so the method keeps its documented over-triggering.
    """

    present_verbs: frozenset[str] = frozenset()
    past_verbs: frozenset[str] = frozenset()
    proper_nouns: frozenset[str] = frozenset()
    qad_exclusions: frozenset[str] = frozenset()

    def __post_init__(self):
        clash = self.present_verbs & self.proper_nouns
        if clash:
            raise ValueError(
                "lexicon conflict: entries are both present_verb and proper_noun: "
                + ", ".join(sorted(clash))
            )


def _read_word_list(path: Path) -> frozenset[str]:
    words: set[str] = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(line)
    return frozenset(words)


def load_lexicons(directory: str | Path) -> Lexicons:
    """Load the four lexicon files from a directory.

    Expected files: ``present_verbs.txt``, ``past_verbs.txt``,
    ``proper_nouns.txt`` and optionally ``qad_exclusions.txt``.  Missing
    files yield empty sets.
    """
    directory = Path(directory)

    def read(name: str) -> frozenset[str]:
        p = directory / name
        return _read_word_list(p) if p.exists() else frozenset()

    return Lexicons(
        present_verbs=read("present_verbs.txt"),
        past_verbs=read("past_verbs.txt"),
        proper_nouns=read("proper_nouns.txt"),
        qad_exclusions=read("qad_exclusions.txt"),
    )


def merge_lexicons(base: Lexicons, extra: Lexicons) -> Lexicons:
    """Union two lexicon sets (user extensions on top of the bundled ones)."""
    return Lexicons(
        present_verbs=base.present_verbs | extra.present_verbs,
        past_verbs=base.past_verbs | extra.past_verbs,
        proper_nouns=base.proper_nouns | extra.proper_nouns,
        qad_exclusions=base.qad_exclusions | extra.qad_exclusions,
    )


def strip_clitics(token: str) -> tuple[str, str]:
    """Remove at most one leading conjunction clitic (و or ف).

    The siin future prefix is never stripped here; callers that care about
    it handle it explicitly.  Always reconstructs: clitics + remainder ==
    token.
    """
    if len(token) > 1 and token[0] in CONJUNCTION_CLITICS:
        return token[0], token[1:]
    return "", token


def analyze_token(
    token: str,
    lex: Lexicons,
    min_stem_after_prefix: int = MIN_STEM_AFTER_PREFIX,
) -> MorphVerdict:
    """Classify a (diacritic-stripped) word token.

    Order matters: the proper-noun stoplist wins over everything, then the
    closed past/present lexicons, then the imperfective-prefix heuristic.
    """
    clitics, stem = strip_clitics(token)
    if token in lex.proper_nouns or stem in lex.proper_nouns:
        verdict = Verdict.PROPER_NOUN
    elif stem in lex.past_verbs or (
        len(stem) > 1 and stem.endswith(TA_SUFFIX) and stem[:-1] in lex.past_verbs
    ):
        verdict = Verdict.PAST_VERB
    elif stem in lex.present_verbs:
        verdict = Verdict.PRESENT_VERB
    elif (
        stem
        and stem[0] in IMPERFECTIVE_PREFIXES
        and len(stem) - 1 >= min_stem_after_prefix
    ):
        verdict = Verdict.PRESENT_VERB
    else:
        verdict = Verdict.OTHER
    return MorphVerdict(token=token, verdict=verdict, stripped_clitics=clitics, stem=stem)


def is_future_verb_with_siin(token: str, lex: Lexicons) -> bool:
    """True when the token is a siin-prefixed present verb.

    The token (and its post-clitic stem) must not be a stoplisted proper
    noun, must start with س after clitic stripping, and the remainder must
    analyze as a present verb.
    """
    if not token:
        return False
    _, stem = strip_clitics(token)
    if token in lex.proper_nouns or stem in lex.proper_nouns:
        return False
    if not stem.startswith(SIIN):
        return False
    remainder = stem[1:]
    if not remainder:
        return False
    return analyze_token(remainder, lex).verdict is Verdict.PRESENT_VERB
