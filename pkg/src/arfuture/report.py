"""Self-contained HTML result pages.

Conventions: positive markers are highlighted yellow; the search field of
a triggered negative marker is shaded red and names the marker in its
hover text; chosen excerpts are underlined; sentences are grouped by
semantic category under a header that links back to the source page.
Styling is inline so a report is a single portable file.
"""

from __future__ import annotations

import html
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .corpus import Document
from .engine import Annotation, DocumentAnalysis, RejectReason, RejectionTrace
from .segment import DEFAULT_BOUNDARIES, Sentence, segment


class RenderError(ValueError):
    """An annotation span does not fit its sentence (upstream bug)."""


_PAGE_CSS = """
body { font-family: "Segoe UI", Tahoma, sans-serif; margin: 2em auto; max-width: 60em; }
header h1 { font-size: 1.3em; }
header .meta { color: #666; font-size: 0.85em; }
section.category > h2 { border-bottom: 1px solid #ccc; padding-bottom: 0.2em; }
ol.sentences li { margin: 0.8em 0; }
p.sentence { line-height: 1.9; }
p.labels { color: #666; font-size: 0.8em; margin-top: -0.6em; }
mark.pos { background: yellow; }
span.neg-field { background: #ffb0b0; }
span.excerpt { text-decoration: underline; }
p.empty { color: #666; font-style: italic; }
table.index { border-collapse: collapse; }
table.index th, table.index td { border: 1px solid #ccc; padding: 0.3em 0.7em; }
footer { margin-top: 2em; color: #999; font-size: 0.8em; }
"""


@dataclass(frozen=True)
class _Decoration:
    span: tuple[int, int]
    kind: str  # "mark" | "field" | "excerpt"
    title: str = ""


@dataclass
class ReportPage:
    doc: Document
    groups: dict[str, list[str]] = field(default_factory=dict)
    class_counts: dict[str, int] = field(default_factory=dict)
    generated_at: str = ""

    @property
    def total_annotations(self) -> int:
        return sum(self.class_counts.values())


def _render_decorated(text: str, decorations: list[_Decoration]) -> str:
    """Wrap byte-span regions of ``text`` in highlight elements.

    Regions may overlap arbitrarily; the text is cut at every span edge and
    each slice is wrapped independently, so stripping the markup always
    gives back the sentence verbatim.
    """
    data = text.encode("utf-8")
    size = len(data)
    for deco in decorations:
        a, b = deco.span
        if not (0 <= a <= b <= size):
            raise RenderError(f"span {deco.span} outside sentence of {size} bytes")
    edges = {0, size}
    for deco in decorations:
        edges.update(deco.span)
    points = sorted(edges)
    out: list[str] = []
    for a, b in zip(points, points[1:]):
        piece = html.escape(data[a:b].decode("utf-8"))
        if not piece:
            continue
        active = [d for d in decorations if d.span[0] <= a and b <= d.span[1]]
        if any(d.kind == "mark" for d in active):
            piece = f'<mark class="pos">{piece}</mark>'
        if any(d.kind == "excerpt" for d in active):
            piece = f'<span class="excerpt">{piece}</span>'
        fields = [d for d in active if d.kind == "field"]
        if fields:
            title = html.escape("; ".join(d.title for d in fields if d.title), quote=True)
            piece = f'<span class="neg-field" title="{title}">{piece}</span>'
        out.append(piece)
    return "".join(out)


def _sentence_block(
    sentence: Sentence,
    annotations: list[Annotation],
    field_traces: list[RejectionTrace],
) -> str:
    decorations: list[_Decoration] = []
    seen_spans: set[tuple[int, int]] = set()
    labels: list[str] = []
    for ann in annotations:
        if ann.class_label not in labels:
            labels.append(ann.class_label)
        for span in ann.positive_marker_spans:
            if span not in seen_spans:
                seen_spans.add(span)
                decorations.append(_Decoration(span=span, kind="mark"))
        if ann.excerpt_span:
            decorations.append(_Decoration(span=ann.excerpt_span, kind="excerpt"))
    for trace in field_traces:
        if trace.negative_field_span:
            decorations.append(
                _Decoration(
                    span=trace.negative_field_span,
                    kind="field",
                    title=f"negative marker: {trace.negative_marker}",
                )
            )
    body = _render_decorated(sentence.text, decorations)
    label_line = html.escape(", ".join(labels))
    return (
        f'<li><p class="sentence" dir="rtl" lang="ar">{body}</p>'
        f'<p class="labels">{label_line}</p></li>'
    )


def build_report_page(
    doc: Document,
    annotations: list[Annotation],
    traces: list[RejectionTrace],
    sentences: list[Sentence] | None = None,
    *,
    generated_at: datetime | None = None,
    show_all_negative_fields: bool = False,
) -> ReportPage:
    if sentences is None:
        sentences = segment(doc.body, doc_id=doc.id, boundaries=DEFAULT_BOUNDARIES)
    by_index = {s.index: s for s in sentences}
    when = generated_at or datetime.now(timezone.utc)
    page = ReportPage(doc=doc, generated_at=when.strftime("%Y-%m-%d %H:%M UTC"))

    annotated_rules: dict[int, set[str]] = {}
    for ann in annotations:
        annotated_rules.setdefault(ann.sentence_index, set()).add(ann.rule_id)
        page.class_counts[ann.class_label] = page.class_counts.get(ann.class_label, 0) + 1

    categories: list[str] = []
    per_cat_sentences: dict[str, list[int]] = {}
    per_sentence_anns: dict[tuple[str, int], list[Annotation]] = {}
    for ann in annotations:
        if ann.category not in categories:
            categories.append(ann.category)
            per_cat_sentences[ann.category] = []
        if ann.sentence_index not in per_cat_sentences[ann.category]:
            per_cat_sentences[ann.category].append(ann.sentence_index)
        per_sentence_anns.setdefault((ann.category, ann.sentence_index), []).append(ann)

    for category in categories:
        blocks: list[str] = []
        for idx in sorted(per_cat_sentences[category]):
            sentence = by_index.get(idx)
            if sentence is None:
                raise RenderError(f"annotation references unknown sentence {idx}")
            field_traces = [
                t
                for t in traces
                if t.sentence_index == idx
                and t.reason is RejectReason.NEGATIVE_FOUND
                and (
                    show_all_negative_fields
                    or t.rule_id in annotated_rules.get(idx, set())
                )
            ]
            blocks.append(
                _sentence_block(sentence, per_sentence_anns[(category, idx)], field_traces)
            )
        page.groups[category] = blocks
    return page


def render_page(page: ReportPage) -> str:
    doc = page.doc
    title = html.escape(doc.title or doc.url)
    url = html.escape(doc.url, quote=True)
    parts = [
        "<!DOCTYPE html>",
        '<html lang="ar" dir="rtl">',
        "<head>",
        '<meta charset="utf-8">',
        f"<title>{title}</title>",
        f"<style>{_PAGE_CSS}</style>",
        "</head>",
        "<body>",
        "<header>",
        f'<h1><a href="{url}">{title}</a></h1>',
        f'<p class="meta">document {html.escape(doc.id)}</p>',
        "</header>",
    ]
    if not page.groups:
        parts.append('<p class="empty">no matches</p>')
    for category, blocks in page.groups.items():
        parts.append('<section class="category">')
        parts.append(f"<h2>{html.escape(category)}</h2>")
        parts.append('<ol class="sentences">')
        parts.extend(blocks)
        parts.append("</ol>")
        parts.append("</section>")
    parts.append(f"<footer>generated {html.escape(page.generated_at)}</footer>")
    parts.append("</body>")
    parts.append("</html>")
    return "\n".join(parts) + "\n"


def render_html(
    doc: Document,
    annotations: list[Annotation],
    traces: list[RejectionTrace],
    sentences: list[Sentence] | None = None,
    *,
    generated_at: datetime | None = None,
    show_all_negative_fields: bool = False,
) -> str:
    """Standalone HTML page for one document's results."""
    page = build_report_page(
        doc,
        annotations,
        traces,
        sentences,
        generated_at=generated_at,
        show_all_negative_fields=show_all_negative_fields,
    )
    return render_page(page)


def render_index(pages: list[ReportPage], class_order: tuple[str, ...] = ()) -> str:
    """Overview page linking every per-document report with class counts."""
    labels = list(class_order)
    for page in pages:
        for label in page.class_counts:
            if label not in labels:
                labels.append(label)
    head_cells = "".join(f"<th>{html.escape(l)}</th>" for l in labels)
    rows = []
    for page in sorted(pages, key=lambda p: p.doc.id):
        cells = "".join(
            f"<td>{page.class_counts.get(label, 0)}</td>" for label in labels
        )
        link = f'<a href="{html.escape(page.doc.id, quote=True)}.html">{html.escape(page.doc.id)}</a>'
        title = html.escape(page.doc.title or page.doc.url)
        rows.append(
            f"<tr><td>{link}</td><td>{title}</td>{cells}<td>{page.total_annotations}</td></tr>"
        )
    generated = pages[0].generated_at if pages else ""
    parts = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        "<title>analysis index</title>",
        f"<style>{_PAGE_CSS}</style>",
        "</head>",
        "<body>",
        "<h1>Analyzed documents</h1>",
        '<table class="index">',
        f"<tr><th>document</th><th>title</th>{head_cells}<th>total</th></tr>",
        *rows,
        "</table>",
        f"<footer>generated {html.escape(generated)}</footer>",
        "</body>",
        "</html>",
    ]
    return "\n".join(parts) + "\n"


def write_reports(
    out_dir: str | Path,
    analyses: list[DocumentAnalysis],
    *,
    generated_at: datetime | None = None,
    show_all_negative_fields: bool = False,
    class_order: tuple[str, ...] = (),
) -> list[ReportPage]:
    """Write ``<doc_id>.html`` per document plus ``index.html``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    when = generated_at or datetime.now(timezone.utc)
    pages = []
    for analysis in analyses:
        page = build_report_page(
            analysis.doc,
            list(analysis.annotations),
            list(analysis.traces),
            list(analysis.sentences),
            generated_at=when,
            show_all_negative_fields=show_all_negative_fields,
        )
        (out_dir / f"{analysis.doc.id}.html").write_text(
            render_page(page), encoding="utf-8", newline="\n"
        )
        pages.append(page)
    (out_dir / "index.html").write_text(
        render_index(pages, class_order), encoding="utf-8", newline="\n"
    )
    return pages
