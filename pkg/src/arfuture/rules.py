"""Rule-file language: marker patterns, variables, semantic map, matcher.

A rule line names an ordered chain of linguistic forms and a target
category::

    qad: (و|ف)؟قد -> مستقبل [morph=qad]

Each form is a marker pattern; a leading ``-`` makes it a negative
(forbidden) form and ``@N`` bounds its search field to N words.  Patterns
support literals, ``(a|b)`` alternation, ``( ... )؟`` optional groups and
``::name`` variable references.  Whitespace between pattern elements means
"next word" (spaced); direct juxtaposition means "same written word"
(glued), which is how single-letter clitics attach.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping, Union

from .segment import Token, TokenKind


class RuleParseError(ValueError):
    """Raised for malformed rule, variable or map files."""


class Adjacency(Enum):
    GLUED = "glued"
    SPACED = "spaced"


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class VariableRef:
    name: str


@dataclass(frozen=True)
class Group:
    alternatives: tuple["PatternSeq", ...]
    optional: bool = False


PatternElement = Union[Literal, VariableRef, Group]


@dataclass(frozen=True)
class PatternSeq:
    """Ordered pattern elements with one adjacency flag per gap."""

    items: tuple[PatternElement, ...]
    joins: tuple[Adjacency, ...] = ()

    def __post_init__(self):
        if self.items and len(self.joins) != len(self.items) - 1:
            raise ValueError("joins must have exactly len(items)-1 entries")


@dataclass(frozen=True)
class SemanticCategory:
    name: str
    parent: str | None = None


@dataclass(frozen=True)
class LinguisticForm:
    polarity: Polarity
    pattern: PatternSeq
    search_field_words: int = 0  # 0 = rest of the sentence


@dataclass(frozen=True)
class LinguisticRule:
    id: str
    forms: tuple[LinguisticForm, ...]
    category: str
    class_label: str
    morph: str | None = None  # None | "qad" | "siin"
    extract: str | None = None  # None | "from-marker-to-end"


@dataclass
class VariableTable:
    """Named patterns; entries are fully expanded (variable-free)."""

    entries: Mapping[str, PatternSeq] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __getitem__(self, name: str) -> PatternSeq:
        return self.entries[name]


# ---------------------------------------------------------------------------
# pattern expression parsing

_OPTIONAL_MARKS = ("؟", "?")  # ؟ and its ASCII alias
_RESERVED = set("()|") | set(_OPTIONAL_MARKS)
_VAR_NAME_RE = re.compile(r"[^\s()|؟?:=#>\[\]-]+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_space(self) -> bool:
        seen = False
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
            seen = True
        return seen


def _parse_seq(sc: _Scanner, in_group: bool) -> PatternSeq:
    items: list[PatternElement] = []
    joins: list[Adjacency] = []
    pending_space = False
    while True:
        pending_space = sc.skip_space() or pending_space
        ch = sc.peek()
        if not ch or (in_group and ch in ")|"):
            break
        if ch in _OPTIONAL_MARKS:
            raise RuleParseError("optional marker must follow a group")
        item: PatternElement
        if ch == "(":
            sc.pos += 1
            alternatives = [_parse_seq(sc, in_group=True)]
            while sc.peek() == "|":
                sc.pos += 1
                alternatives.append(_parse_seq(sc, in_group=True))
            if sc.peek() != ")":
                raise RuleParseError("unbalanced parentheses in pattern")
            sc.pos += 1
            if any(not alt.items for alt in alternatives):
                raise RuleParseError("empty alternative in pattern group")
            optional = sc.peek() in _OPTIONAL_MARKS
            if optional:
                sc.pos += 1
            item = Group(tuple(alternatives), optional=optional)
        elif ch == ")":
            raise RuleParseError("unbalanced parentheses in pattern")
        elif sc.text.startswith("::", sc.pos):
            sc.pos += 2
            m = _VAR_NAME_RE.match(sc.text, sc.pos)
            if not m:
                raise RuleParseError("variable reference needs a name after ::")
            sc.pos = m.end()
            item = VariableRef(m.group())
        else:
            start = sc.pos
            while sc.pos < len(sc.text):
                c = sc.text[sc.pos]
                if c.isspace() or c in _RESERVED or sc.text.startswith("::", sc.pos):
                    break
                sc.pos += 1
            item = Literal(sc.text[start:sc.pos])
        if items:
            joins.append(Adjacency.SPACED if pending_space else Adjacency.GLUED)
        items.append(item)
        pending_space = False
    return PatternSeq(tuple(items), tuple(joins))


def parse_pattern(text: str) -> PatternSeq:
    """Parse one pattern expression (no polarity or field-length syntax)."""
    sc = _Scanner(text)
    seq = _parse_seq(sc, in_group=False)
    if sc.pos != len(sc.text):
        raise RuleParseError(f"unexpected {sc.peek()!r} in pattern")
    if not seq.items:
        raise RuleParseError("empty pattern")
    if _can_match_empty(seq):
        raise RuleParseError("pattern may not match the empty string")
    return seq


def _can_match_empty(seq: PatternSeq) -> bool:
    def item_empty(item: PatternElement) -> bool:
        if isinstance(item, Group):
            if item.optional:
                return True
            return any(all(item_empty(i) for i in alt.items) for alt in item.alternatives)
        return False

    return all(item_empty(i) for i in seq.items)


def expand_variables(
    seq: PatternSeq, table: VariableTable, _stack: tuple[str, ...] = ()
) -> PatternSeq:
    """Inline every variable reference; detects cycles."""
    items: list[PatternElement] = []
    for item in seq.items:
        if isinstance(item, VariableRef):
            if item.name in _stack:
                raise RuleParseError(f"recursive reference to variable {item.name}")
            if item.name not in table:
                raise RuleParseError(f"unresolved variable {item.name}")
            inner = expand_variables(table[item.name], table, _stack + (item.name,))
            items.append(Group((inner,), optional=False))
        elif isinstance(item, Group):
            items.append(
                Group(
                    tuple(expand_variables(a, table, _stack) for a in item.alternatives),
                    optional=item.optional,
                )
            )
        else:
            items.append(item)
    return PatternSeq(tuple(items), seq.joins)


def pattern_has_variables(seq: PatternSeq) -> bool:
    for item in seq.items:
        if isinstance(item, VariableRef):
            return True
        if isinstance(item, Group) and any(
            pattern_has_variables(a) for a in item.alternatives
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# variable definition / semantic map / rule file parsing


def parse_variable_defs(text: str) -> VariableTable:
    """Parse ``::name = expression`` lines into a fully expanded table."""
    raw: dict[str, PatternSeq] = {}
    order: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"::(\S+)\s*=\s*(.+)$", line)
        if not m:
            raise RuleParseError(f"bad variable definition at line {lineno}: {line!r}")
        name, expr = m.group(1), m.group(2)
        if name in raw:
            raise RuleParseError(f"duplicate variable {name} at line {lineno}")
        try:
            raw[name] = parse_pattern(expr)
        except RuleParseError as exc:
            raise RuleParseError(f"line {lineno}: {exc}") from None
        order.append(name)
    staging = VariableTable(raw)
    expanded = {name: expand_variables(raw[name], staging) for name in order}
    return VariableTable(expanded)


def parse_semantic_map(text: str) -> list[SemanticCategory]:
    """Parse the indentation outline (2 spaces per nesting level)."""
    categories: list[SemanticCategory] = []
    seen: set[str] = set()
    stack: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        indent = len(stripped) - len(stripped.lstrip(" "))
        name = stripped.strip()
        if indent % 2 != 0:
            raise RuleParseError(f"inconsistent indentation at line {lineno}")
        level = indent // 2
        if level > len(stack):
            raise RuleParseError(f"inconsistent indentation at line {lineno}")
        if name in seen:
            raise RuleParseError(f"duplicate category {name} at line {lineno}")
        parent = stack[level - 1] if level > 0 else None
        categories.append(SemanticCategory(name=name, parent=parent))
        seen.add(name)
        del stack[level:]
        stack.append(name)
    return categories


_RULE_ID_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_-]*):\s+")
_DIRECTIVES_RE = re.compile(r"\[([^\]]*)\]\s*$")
_FIELD_RE = re.compile(r"@(\d+)\s*$")
_KNOWN_DIRECTIVES = {"morph", "class", "extract"}


def parse_rules(
    text: str,
    variables: VariableTable,
    semantic_map: list[SemanticCategory] | None = None,
) -> list[LinguisticRule]:
    """Parse a rule file; one rule per non-empty, non-comment line.

    Patterns are expanded against ``variables`` immediately, so returned
    rules are ready to match.  When a semantic map is given, rule
    categories are checked against it.
    """
    known_categories = {c.name for c in semantic_map} if semantic_map is not None else None
    rules: list[LinguisticRule] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rule_id = f"rule{len(rules) + 1}"
        m = _RULE_ID_RE.match(line)
        if m:
            rule_id = m.group(1)
            line = line[m.end():]
        directives: dict[str, str] = {}
        m = _DIRECTIVES_RE.search(line)
        if m:
            line = line[: m.start()].strip()
            for part in m.group(1).split(","):
                part = part.strip()
                if not part:
                    continue
                if "=" not in part:
                    raise RuleParseError(f"bad directive {part!r} at line {lineno}")
                key, value = part.split("=", 1)
                key = key.strip()
                if key not in _KNOWN_DIRECTIVES:
                    raise RuleParseError(f"unknown directive {key!r} at line {lineno}")
                directives[key] = value.strip()
        arrow = "->" if "->" in line else "<-" if "<-" in line else None
        if arrow is None:
            raise RuleParseError(f"missing category arrow at line {lineno}")
        lhs, _, category = line.rpartition(arrow)
        category = category.strip()
        if not category:
            raise RuleParseError(f"missing category at line {lineno}")
        if known_categories is not None and category not in known_categories:
            raise RuleParseError(
                f"category not in semantic map: {category} at line {lineno}"
            )
        forms: list[LinguisticForm] = []
        for chunk in lhs.split(">"):
            chunk = chunk.strip()
            if not chunk:
                raise RuleParseError(f"empty linguistic form at line {lineno}")
            polarity = Polarity.POSITIVE
            if chunk.startswith("-"):
                polarity = Polarity.NEGATIVE
                chunk = chunk[1:].strip()
            field_words = 0
            fm = _FIELD_RE.search(chunk)
            if fm:
                field_words = int(fm.group(1))
                chunk = chunk[: fm.start()].strip()
            try:
                pattern = expand_variables(parse_pattern(chunk), variables)
            except RuleParseError as exc:
                raise RuleParseError(f"{exc} at line {lineno}") from None
            forms.append(
                LinguisticForm(
                    polarity=polarity, pattern=pattern, search_field_words=field_words
                )
            )
        if not any(f.polarity is Polarity.POSITIVE for f in forms):
            raise RuleParseError(f"rule has no positive marker at line {lineno}")
        rules.append(
            LinguisticRule(
                id=rule_id,
                forms=tuple(forms),
                category=category,
                class_label=directives.get("class", rule_id),
                morph=directives.get("morph"),
                extract=directives.get("extract"),
            )
        )
    return rules


# ---------------------------------------------------------------------------
# pretty printing (parse/format round-trips)


def format_pattern(seq: PatternSeq) -> str:
    parts: list[str] = []
    for idx, item in enumerate(seq.items):
        if idx:
            parts.append(" " if seq.joins[idx - 1] is Adjacency.SPACED else "")
        if isinstance(item, Literal):
            parts.append(item.text)
        elif isinstance(item, VariableRef):
            parts.append(f"::{item.name}")
        else:
            body = "|".join(format_pattern(a) for a in item.alternatives)
            parts.append(f"({body})" + ("؟" if item.optional else ""))
    return "".join(parts)


def format_rule(rule: LinguisticRule) -> str:
    chunks = []
    for form in rule.forms:
        s = format_pattern(form.pattern)
        if form.polarity is Polarity.NEGATIVE:
            s = "-" + s
        if form.search_field_words:
            s += f"@{form.search_field_words}"
        chunks.append(s)
    line = f"{rule.id}: " + " > ".join(chunks) + f" -> {rule.category}"
    directives = []
    if rule.morph:
        directives.append(f"morph={rule.morph}")
    if rule.class_label != rule.id:
        directives.append(f"class={rule.class_label}")
    if rule.extract:
        directives.append(f"extract={rule.extract}")
    if directives:
        line += " [" + ", ".join(directives) + "]"
    return line


# ---------------------------------------------------------------------------
# matching


@dataclass(frozen=True)
class PatternMatch:
    """A successful match over a token window.

    ``pieces`` are (token_index, shadow_start, shadow_end) ranges, merged
    per token, covering exactly the consumed characters.
    """

    start_token: int
    end_token: int
    end_char: int
    pieces: tuple[tuple[int, int, int], ...]


class Matcher:
    """Executable form of a variable-free pattern.

    Matching is anchored at a start token: glued runs must cover whole
    written words (except in prefix mode, where the final word may extend
    past the pattern), spaced gaps advance to the next Word token.  Among
    all viable parses the longest one wins; ties resolve to the first
    alternative in file order, so results are deterministic.
    """

    def __init__(self, pattern: PatternSeq):
        if pattern_has_variables(pattern):
            raise ValueError("pattern must be variable-free; expand it first")
        self.pattern = pattern
        chars, _ = _first_chars(pattern)
        self.first_chars: frozenset[str] = frozenset(chars)

    def match_at(
        self,
        tokens: list[Token],
        start: int,
        *,
        prefix: bool = False,
        punct_transparent: bool = True,
    ) -> PatternMatch | None:
        if start >= len(tokens):
            return None
        shadow = tokens[start].shadow
        if not shadow or shadow[0] not in self.first_chars:
            return None
        best: tuple[int, int, tuple] | None = None
        for ti, cp, consumed in _iter_items(
            self.pattern.items,
            self.pattern.joins,
            0,
            start,
            0,
            None,
            tokens,
            punct_transparent,
            (),
        ):
            if not consumed:
                continue
            if not prefix and cp != len(tokens[ti].shadow):
                continue
            if best is None or (ti, cp) > (best[0], best[1]):
                best = (ti, cp, consumed)
        if best is None:
            return None
        ti, cp, consumed = best
        return PatternMatch(
            start_token=start,
            end_token=ti,
            end_char=cp,
            pieces=_merge_pieces(consumed),
        )


def _advance(
    incoming: Adjacency | None,
    ti: int,
    cp: int,
    tokens: list[Token],
    punct_transparent: bool,
) -> tuple[int, int] | None:
    if incoming is not Adjacency.SPACED:
        return ti, cp
    if cp != len(tokens[ti].shadow):
        return None
    j = ti + 1
    if punct_transparent:
        while j < len(tokens) and tokens[j].kind is TokenKind.PUNCT:
            j += 1
    if j >= len(tokens) or tokens[j].kind is not TokenKind.WORD:
        return None
    return j, 0


def _iter_items(
    items: tuple[PatternElement, ...],
    joins: tuple[Adjacency, ...],
    idx: int,
    ti: int,
    cp: int,
    incoming: Adjacency | None,
    tokens: list[Token],
    punct_transparent: bool,
    consumed: tuple,
) -> Iterator[tuple[int, int, tuple]]:
    if idx == len(items):
        yield ti, cp, consumed
        return
    item = items[idx]
    next_incoming = joins[idx] if idx < len(joins) else None
    if isinstance(item, Literal):
        pos = _advance(incoming, ti, cp, tokens, punct_transparent)
        if pos is not None:
            t2, c2 = pos
            if tokens[t2].shadow.startswith(item.text, c2):
                yield from _iter_items(
                    items,
                    joins,
                    idx + 1,
                    t2,
                    c2 + len(item.text),
                    next_incoming,
                    tokens,
                    punct_transparent,
                    consumed + ((t2, c2, c2 + len(item.text)),),
                )
    elif isinstance(item, Group):
        for alt in item.alternatives:
            for t2, c2, cons2 in _iter_items(
                alt.items,
                alt.joins,
                0,
                ti,
                cp,
                incoming,
                tokens,
                punct_transparent,
                consumed,
            ):
                yield from _iter_items(
                    items, joins, idx + 1, t2, c2, next_incoming, tokens,
                    punct_transparent, cons2,
                )
        if item.optional:
            yield from _iter_items(
                items, joins, idx + 1, ti, cp, next_incoming, tokens,
                punct_transparent, consumed,
            )
    else:  # pragma: no cover - excluded by the constructor check
        raise ValueError("cannot match an unexpanded variable reference")


def _merge_pieces(consumed: tuple) -> tuple[tuple[int, int, int], ...]:
    merged: list[list[int]] = []
    for ti, a, b in consumed:
        if merged and merged[-1][0] == ti and merged[-1][2] == a:
            merged[-1][2] = b
        else:
            merged.append([ti, a, b])
    return tuple((t, a, b) for t, a, b in merged)


def _first_chars(seq: PatternSeq) -> tuple[set[str], bool]:
    chars: set[str] = set()
    may_skip = True
    for item in seq.items:
        if not may_skip:
            break
        if isinstance(item, Literal):
            chars.add(item.text[0])
            may_skip = False
        elif isinstance(item, Group):
            alt_skip = item.optional
            for alt in item.alternatives:
                c, e = _first_chars(alt)
                chars |= c
                alt_skip = alt_skip or e
            may_skip = alt_skip
        else:
            raise ValueError("first-char analysis requires a variable-free pattern")
    return chars, may_skip


def compile_pattern(pattern: PatternSeq) -> Matcher:
    """Build a Matcher for an already-expanded pattern."""
    return Matcher(pattern)


def expansions(seq: PatternSeq) -> set[tuple[str, ...]]:
    """Enumerate every surface form a variable-free pattern can take.

    Each expansion is a tuple of written words (glued runs merged, spaced
    gaps separating tuple entries).  The sets are small for all bundled
    patterns, which makes this usable as a second, matcher-independent
    membership test.
    """
    return {t for t in _seq_expansions(seq) if t}


def _seq_expansions(seq: PatternSeq) -> set[tuple[str, ...]]:
    acc: set[tuple[str, ...]] = {()}
    for idx, item in enumerate(seq.items):
        join = seq.joins[idx - 1] if idx else None
        opts = _item_expansions(item)
        acc = {_combine(a, join, b) for a in acc for b in opts}
    return acc


def _item_expansions(item: PatternElement) -> set[tuple[str, ...]]:
    if isinstance(item, Literal):
        return {(item.text,)}
    if isinstance(item, Group):
        out: set[tuple[str, ...]] = set()
        for alt in item.alternatives:
            out |= _seq_expansions(alt)
        if item.optional:
            out.add(())
        return out
    raise ValueError("cannot expand an unexpanded variable reference")


def _combine(
    a: tuple[str, ...], join: Adjacency | None, b: tuple[str, ...]
) -> tuple[str, ...]:
    if not a:
        return b
    if not b:
        return a
    if join is Adjacency.SPACED:
        return a + b
    return a[:-1] + (a[-1] + b[0],) + b[1:]
