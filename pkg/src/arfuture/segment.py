"""Sentence segmentation and tokenization for Arabic news prose.

Segmentation is typographic: a sentence ends after a period, Arabic
question mark or exclamation mark when followed by whitespace (or end of
text), and at newlines.  Each trigger can be switched off individually;
with only ``dot-space`` enabled the splitter degrades to the bare
period-plus-space heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .offsets import ByteMap

# Arabic harakat stripped from matching shadows (kept in surfaces).
HARAKAT = frozenset("ًٌٍَُِّْ")
TATWEEL = "ـ"

#: names of the individual boundary triggers
BOUNDARY_DOT = "dot-space"
BOUNDARY_QMARK = "arabic-qmark"
BOUNDARY_EXCLAM = "exclam"
BOUNDARY_NEWLINE = "newline"

DEFAULT_BOUNDARIES = frozenset(
    {BOUNDARY_DOT, BOUNDARY_QMARK, BOUNDARY_EXCLAM, BOUNDARY_NEWLINE}
)

_TRIGGER_CHARS = {".": BOUNDARY_DOT, "؟": BOUNDARY_QMARK, "!": BOUNDARY_EXCLAM}


class TokenKind(Enum):
    WORD = "word"
    PUNCT = "punct"
    DIGIT = "digit"


@dataclass(frozen=True)
class Sentence:
    """One segmented sentence; ``span`` is a byte span into the body."""

    doc_id: str
    index: int
    span: tuple[int, int]
    text: str


@dataclass(frozen=True)
class Token:
    """One token; ``span`` is a byte span into the sentence text.

    ``surface`` has tatweel removed; ``shadow`` additionally drops harakat
    and is the string patterns are matched against.  ``shadow_map`` gives,
    for every shadow char, its char index in the sentence text, so matched
    shadow ranges can be mapped back to exact source spans.
    """

    surface: str
    span: tuple[int, int]
    kind: TokenKind
    shadow: str = ""
    char_span: tuple[int, int] = (0, 0)
    shadow_map: tuple[int, ...] = field(default=(), repr=False)

    def shadow_to_char_span(self, start: int, end: int) -> tuple[int, int]:
        """Map a shadow char range back to a sentence-text char span.

        Ranges touching the token edges are widened to cover skipped
        tatweel and trailing harakat, so full-token matches highlight the
        full written word.
        """
        if not self.shadow_map:
            return self.char_span
        c_start = self.char_span[0] if start == 0 else self.shadow_map[start]
        c_end = self.char_span[1] if end == len(self.shadow) else self.shadow_map[end - 1] + 1
        return c_start, c_end


def _is_word_char(ch: str) -> bool:
    return ch.isalpha() or ch in HARAKAT


def segment(
    body: str,
    doc_id: str = "",
    boundaries: frozenset[str] = DEFAULT_BOUNDARIES,
) -> list[Sentence]:
    """Split a document body into sentences.

    Boundary characters stay inside the preceding sentence; whitespace-only
    candidates are dropped.  Spans are tight (no surrounding whitespace), so
    ``text`` equals the body slice at ``span``.
    """
    if not body:
        return []
    bmap = ByteMap(body)
    pieces: list[tuple[int, int]] = []  # char spans, untrimmed
    start = 0
    n = len(body)
    for i, ch in enumerate(body):
        if ch == "\n":
            if BOUNDARY_NEWLINE in boundaries:
                pieces.append((start, i))
                start = i + 1
            continue
        trigger = _TRIGGER_CHARS.get(ch)
        if trigger and trigger in boundaries:
            if i + 1 == n or body[i + 1].isspace():
                pieces.append((start, i + 1))
                start = i + 1
    pieces.append((start, n))

    sentences: list[Sentence] = []
    for raw_start, raw_end in pieces:
        s, e = raw_start, raw_end
        while s < e and body[s].isspace():
            s += 1
        while e > s and body[e - 1].isspace():
            e -= 1
        if s == e:
            continue
        sentences.append(
            Sentence(
                doc_id=doc_id,
                index=len(sentences),
                span=bmap.to_byte_span(s, e),
                text=body[s:e],
            )
        )
    return sentences


def tokenize(sentence_text: str) -> list[Token]:
    """Split sentence text into Word / Digit / Punct tokens.

    Word runs cover letters plus harakat (tatweel joins a run but is
    dropped from the surface).  Digits form their own runs; every other
    non-space char becomes a single Punct token.
    """
    bmap = ByteMap(sentence_text)
    tokens: list[Token] = []
    i = 0
    n = len(sentence_text)
    while i < n:
        ch = sentence_text[i]
        if ch.isspace():
            i += 1
            continue
        if _is_word_char(ch):
            j = i
            surface_chars: list[str] = []
            shadow_chars: list[str] = []
            shadow_map: list[int] = []
            while j < n and _is_word_char(sentence_text[j]):
                c = sentence_text[j]
                if c != TATWEEL:
                    surface_chars.append(c)
                    if c not in HARAKAT:
                        shadow_chars.append(c)
                        shadow_map.append(j)
                j += 1
            tokens.append(
                Token(
                    surface="".join(surface_chars),
                    span=bmap.to_byte_span(i, j),
                    kind=TokenKind.WORD,
                    shadow="".join(shadow_chars),
                    char_span=(i, j),
                    shadow_map=tuple(shadow_map),
                )
            )
            i = j
        elif ch.isdigit():
            j = i
            while j < n and sentence_text[j].isdigit():
                j += 1
            run = sentence_text[i:j]
            tokens.append(
                Token(
                    surface=run,
                    span=bmap.to_byte_span(i, j),
                    kind=TokenKind.DIGIT,
                    shadow=run,
                    char_span=(i, j),
                    shadow_map=tuple(range(i, j)),
                )
            )
            i = j
        else:
            tokens.append(
                Token(
                    surface=ch,
                    span=bmap.to_byte_span(i, i + 1),
                    kind=TokenKind.PUNCT,
                    shadow=ch,
                    char_span=(i, i + 1),
                    shadow_map=(i,),
                )
            )
            i += 1
    return tokens
