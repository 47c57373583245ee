from __future__ import annotations

import random
from fractions import Fraction

import pytest

from arfuture.evaluate import (
    CLASS_LABELS,
    GoldAnnotation,
    GoldFormatError,
    distribution,
    dump_gold,
    format_distribution,
    format_results,
    load_gold,
    pct_string,
    report_to_json_dict,
    score,
)

# reference per-class gold counts the scoring must reproduce exactly
REFERENCE_GOLD = {
    "qad": 64,
    "sin": 450,
    "lan": 93,
    "sawfa": 26,
    "participle": 47,
    "past_verb": 32,
    "present_verb": 31,
}
REFERENCE_FALSE_POSITIVES = {"qad": 4, "sin": 13, "sawfa": 2}


def synthetic_gold() -> list[GoldAnnotation]:
    gold = []
    for label, count in REFERENCE_GOLD.items():
        for i in range(count):
            gold.append(GoldAnnotation(doc_id=f"{label}-{i}", sentence_index=0, class_label=label))
    return gold


def synthetic_predictions() -> set[tuple[str, int, str]]:
    triples = {g.triple for g in synthetic_gold()}
    for label, count in REFERENCE_FALSE_POSITIVES.items():
        for i in range(count):
            triples.add((f"fp-{label}-{i}", 0, label))
    return triples


class TestPctString:
    def test_exact_boundaries(self):
        assert pct_string(64, 68) == "94.11"
        assert pct_string(450, 463) == "97.19"
        assert pct_string(26, 28) == "92.85"
        assert pct_string(743, 762) == "97.50"
        assert pct_string(10, 10) == "100.00"
        assert pct_string(0, 5) == "0.00"

    def test_undefined_marker(self):
        assert pct_string(0, 0) is None

    def test_matches_fraction_oracle(self):
        rng = random.Random(88)
        for _ in range(500):
            numer = rng.randint(0, 1000)
            denom = rng.randint(1, 1000)
            value = Fraction(numer, denom) * 10000
            hundredths = value.numerator // value.denominator
            expected = f"{hundredths // 100}.{hundredths % 100:02d}"
            assert pct_string(numer, denom) == expected


class TestLoadGold:
    def test_single_row(self):
        got = load_gold("d1\t3\tqad")
        assert got == [GoldAnnotation(doc_id="d1", sentence_index=3, class_label="qad")]

    def test_unknown_label(self):
        with pytest.raises(GoldFormatError, match="line 1.*xyz"):
            load_gold("d1\t3\txyz")

    def test_duplicate_rejected(self):
        with pytest.raises(GoldFormatError, match="duplicate"):
            load_gold("d1\t3\tqad\nd1\t3\tqad")

    def test_comments_skipped(self):
        assert load_gold("# c\nd1\t0\tsin\n") != []

    def test_round_trip(self):
        rng = random.Random(5)
        gold = []
        seen = set()
        for _ in range(60):
            g = GoldAnnotation(
                doc_id=f"d{rng.randint(0, 20)}",
                sentence_index=rng.randint(0, 30),
                class_label=rng.choice(CLASS_LABELS),
            )
            if g.triple not in seen:
                seen.add(g.triple)
                gold.append(g)
        assert load_gold(dump_gold(gold)) == gold


class TestScore:
    def test_reference_counts_reproduce_results_table(self):
        report = score(synthetic_predictions(), synthetic_gold())
        assert report.predicted_future == 762
        assert report.gold_future == 743
        assert report.overall.tp == 743
        assert report.overall.fp == 19
        assert report.overall.fn == 0
        assert report.per_class["qad"].precision == "94.11"
        assert report.per_class["sin"].precision == "97.19"
        assert report.per_class["sawfa"].precision == "92.85"
        for label in ("lan", "participle", "past_verb", "present_verb"):
            assert report.per_class[label].precision == "100.00"
        assert all(cs.recall == "100.00" for cs in report.per_class.values())
        assert report.overall.precision == "97.50"
        assert report.overall.recall == "100.00"

    def test_implied_false_positives_sum_to_19(self):
        # the per-class false positive counts implied by the precision
        # figures must add up to the reported 19 wrong sentences
        assert sum(REFERENCE_FALSE_POSITIVES.values()) == 19
        for label, fp in REFERENCE_FALSE_POSITIVES.items():
            tp = REFERENCE_GOLD[label]
            reported = {"qad": "94.11", "sin": "97.19", "sawfa": "92.85"}[label]
            assert pct_string(tp, tp + fp) == reported
            # one fewer or one more false positive would miss the figure
            assert pct_string(tp, tp + fp - 1) != reported
            assert pct_string(tp, tp + fp + 1) != reported

    def test_empty_everything(self):
        report = score(set(), [])
        assert report.overall.tp == report.overall.fp == report.overall.fn == 0
        assert report.overall.precision is None
        assert report.overall.recall is None

    def test_perfect_predictions_symmetry(self):
        gold = synthetic_gold()
        report = score({g.triple for g in gold}, gold)
        for cs in report.per_class.values():
            if cs.tp:
                assert cs.precision == "100.00" and cs.recall == "100.00"

    def test_zero_fp_gives_perfect_precision(self):
        gold = [GoldAnnotation("d", 0, "qad"), GoldAnnotation("d", 1, "qad")]
        report = score({("d", 0, "qad")}, gold)
        assert report.per_class["qad"].precision == "100.00"
        assert report.per_class["qad"].recall == "50.00"

    def test_adding_false_positive_never_raises_precision(self):
        rng = random.Random(17)
        for _ in range(50):
            gold = [
                GoldAnnotation(f"d{i}", 0, rng.choice(CLASS_LABELS))
                for i in range(rng.randint(1, 12))
            ]
            gold = list({g.triple: g for g in gold}.values())
            preds = {g.triple for g in gold if rng.random() < 0.8}
            base = score(set(preds), gold)
            extra_label = rng.choice(CLASS_LABELS)
            preds.add((f"fp{rng.randint(0, 10**6)}", 0, extra_label))
            bumped = score(preds, gold)
            for label in CLASS_LABELS:
                a = base.per_class[label].precision
                b = bumped.per_class[label].precision
                if a is not None and b is not None:
                    assert float(b) <= float(a)

    def test_overall_equals_class_sums(self):
        report = score(synthetic_predictions(), synthetic_gold())
        assert report.overall.tp == sum(c.tp for c in report.per_class.values())
        assert report.overall.fp == sum(c.fp for c in report.per_class.values())
        assert report.overall.fn == sum(c.fn for c in report.per_class.values())


class TestDistribution:
    def test_reference_distribution(self):
        counts = distribution(synthetic_gold())
        assert counts == REFERENCE_GOLD
        assert sum(counts.values()) == 743

    def test_empty_gold_all_zero(self):
        counts = distribution([])
        assert set(counts) == set(CLASS_LABELS)
        assert all(v == 0 for v in counts.values())


class TestPresentation:
    def test_distribution_table_shape(self):
        text = format_distribution(synthetic_gold())
        assert "Total" in text and "743" in text

    def test_results_table_shape(self):
        text = format_results(score(synthetic_predictions(), synthetic_gold()))
        assert "Overall" in text and "97.50" in text and "94.11" in text

    def test_json_shape(self):
        data = report_to_json_dict(score(synthetic_predictions(), synthetic_gold(), total_sentences=4634))
        assert set(data) == {"per_class", "overall", "totals"}
        assert data["totals"] == {
            "sentences": 4634,
            "predicted_future": 762,
            "gold_future": 743,
        }
        assert data["per_class"]["qad"] == {
            "tp": 64,
            "fp": 4,
            "fn": 0,
            "precision": "94.11",
            "recall": "100.00",
        }
