"""Scoring predicted future-sentence classes against gold annotations.

Matching granularity is the (document, sentence, class) triple; per-class
and overall precision/recall are reported as percentages truncated to two
decimals, which is how exact fractions like 64/68 come out as 94.11.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import Annotation

#: the seven future-sentence classes, in reporting order
CLASS_LABELS = (
    "qad",
    "sin",
    "lan",
    "sawfa",
    "participle",
    "past_verb",
    "present_verb",
)

Triple = tuple[str, int, str]


class GoldFormatError(ValueError):
    """Malformed gold annotation file."""


@dataclass(frozen=True)
class GoldAnnotation:
    doc_id: str
    sentence_index: int
    class_label: str

    @property
    def triple(self) -> Triple:
        return (self.doc_id, self.sentence_index, self.class_label)


def load_gold(text: str, known_labels: tuple[str, ...] = CLASS_LABELS) -> list[GoldAnnotation]:
    """Parse gold TSV lines ``doc_id<TAB>sentence_index<TAB>class_label``."""
    gold: list[GoldAnnotation] = []
    seen: set[Triple] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise GoldFormatError(f"line {lineno}: expected 3 tab-separated fields")
        doc_id, index_str, label = (p.strip() for p in parts)
        try:
            index = int(index_str)
        except ValueError:
            raise GoldFormatError(f"line {lineno}: bad sentence index {index_str!r}") from None
        if label not in known_labels:
            raise GoldFormatError(f"line {lineno}: unknown class label {label!r}")
        ann = GoldAnnotation(doc_id=doc_id, sentence_index=index, class_label=label)
        if ann.triple in seen:
            raise GoldFormatError(f"line {lineno}: duplicate gold annotation")
        seen.add(ann.triple)
        gold.append(ann)
    return gold


def dump_gold(gold: list[GoldAnnotation]) -> str:
    return "".join(f"{g.doc_id}\t{g.sentence_index}\t{g.class_label}\n" for g in gold)


def predictions_to_triples(predicted: list[Annotation]) -> set[Triple]:
    """Deduplicate annotations to (doc, sentence, class) triples."""
    return {(a.doc_id, a.sentence_index, a.class_label) for a in predicted}


def pct_string(numer: int, denom: int) -> str | None:
    """Percentage with two decimals, truncated (never rounded up)."""
    if denom <= 0:
        return None
    hundredths = numer * 10000 // denom
    return f"{hundredths // 100}.{hundredths % 100:02d}"


@dataclass
class ClassScore:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> str | None:
        return pct_string(self.tp, self.tp + self.fp)

    @property
    def recall(self) -> str | None:
        return pct_string(self.tp, self.tp + self.fn)


@dataclass
class EvalReport:
    per_class: dict[str, ClassScore] = field(default_factory=dict)
    overall: ClassScore = field(default_factory=ClassScore)
    total_sentences: int = 0
    predicted_future: int = 0
    gold_future: int = 0


def score(
    predicted: list[Annotation] | set[Triple],
    gold: list[GoldAnnotation],
    total_sentences: int = 0,
) -> EvalReport:
    """Per-class and overall TP/FP/FN with precision and recall."""
    if isinstance(predicted, set):
        pred_triples = predicted
    else:
        pred_triples = predictions_to_triples(predicted)
    gold_triples = {g.triple for g in gold}

    labels = list(CLASS_LABELS)
    for t in sorted(pred_triples | gold_triples):
        if t[2] not in labels:
            labels.append(t[2])

    report = EvalReport(
        total_sentences=total_sentences,
        predicted_future=len(pred_triples),
        gold_future=len(gold_triples),
    )
    for label in labels:
        pred_l = {t for t in pred_triples if t[2] == label}
        gold_l = {t for t in gold_triples if t[2] == label}
        cs = ClassScore(
            tp=len(pred_l & gold_l),
            fp=len(pred_l - gold_l),
            fn=len(gold_l - pred_l),
        )
        report.per_class[label] = cs
        report.overall.tp += cs.tp
        report.overall.fp += cs.fp
        report.overall.fn += cs.fn
    return report


def distribution(gold: list[GoldAnnotation]) -> dict[str, int]:
    """Gold triple count per class (all known classes always present)."""
    counts = {label: 0 for label in CLASS_LABELS}
    for g in gold:
        counts[g.class_label] = counts.get(g.class_label, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# presentation


def format_distribution(gold: list[GoldAnnotation]) -> str:
    counts = distribution(gold)
    width = max(len(label) for label in counts) + 2
    lines = ["Future sentence class".ljust(width + 10) + "Number"]
    for label, count in counts.items():
        lines.append(label.ljust(width + 10) + str(count))
    lines.append("Total".ljust(width + 10) + str(sum(counts.values())))
    return "\n".join(lines)


def format_results(report: EvalReport) -> str:
    def fmt(value: str | None) -> str:
        return value if value is not None else "-"

    width = max([len(label) for label in report.per_class] + [len("Overall")]) + 2
    lines = [f"{'Class'.ljust(width)}{'Precision':>10}{'Recall':>10}"]
    for label, cs in report.per_class.items():
        lines.append(f"{label.ljust(width)}{fmt(cs.precision):>10}{fmt(cs.recall):>10}")
    o = report.overall
    lines.append(f"{'Overall'.ljust(width)}{fmt(o.precision):>10}{fmt(o.recall):>10}")
    return "\n".join(lines)


def report_to_json_dict(report: EvalReport) -> dict:
    def class_dict(cs: ClassScore) -> dict:
        return {
            "tp": cs.tp,
            "fp": cs.fp,
            "fn": cs.fn,
            "precision": cs.precision,
            "recall": cs.recall,
        }

    return {
        "per_class": {label: class_dict(cs) for label, cs in report.per_class.items()},
        "overall": class_dict(report.overall),
        "totals": {
            "sentences": report.total_sentences,
            "predicted_future": report.predicted_future,
            "gold_future": report.gold_future,
        },
    }
