"""Command-line pipeline: ``ingest``, ``analyze`` and ``eval`` subcommands.

Exit codes are the process-level contract: 0 on success, 1 when a command
legitimately produced nothing (e.g. every page was rejected), 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import corpus as corpus_mod
from . import evaluate as eval_mod
from .config import Config, ConfigError, load_config, parse_boundaries
from .engine import dump_annotations, load_annotations
from .report import write_reports
from .resources import load_engine
from .rules import RuleParseError

EXIT_OK = 0
EXIT_EMPTY = 1
EXIT_ERROR = 2


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="flat key=value config file")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--jobs", type=int, help="parallel workers (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arfuture",
        description="Detect Arabic future-event expressions in news text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="turn HTML pages into corpus files")
    _common_flags(p_ingest)
    p_ingest.add_argument(
        "--input",
        required=True,
        type=Path,
        help="directory of HTML files, or a text file listing URLs/paths",
    )
    p_ingest.add_argument("--min-run-chars", type=int, help="main-article run threshold")
    p_ingest.add_argument(
        "--delay", type=int, default=1000, help="politeness delay between fetches (ms)"
    )

    p_analyze = sub.add_parser("analyze", help="annotate a corpus and write reports")
    _common_flags(p_analyze)
    p_analyze.add_argument("--corpus", required=True, type=Path, help="corpus directory")
    p_analyze.add_argument("--rules", type=Path, help="rule file override")
    p_analyze.add_argument("--variables", type=Path, help="variable file override")
    p_analyze.add_argument("--semantic-map", type=Path, help="semantic map override")
    p_analyze.add_argument("--lexicon-dir", type=Path, help="extra lexicon directory")
    p_analyze.add_argument(
        "--boundaries",
        help="comma-separated sentence boundary triggers "
        "(dot-space, arabic-qmark, exclam, newline)",
    )
    p_analyze.add_argument(
        "--strict-adjacency",
        action="store_true",
        help="punctuation blocks word-to-word pattern gaps",
    )
    p_analyze.add_argument(
        "--show-all-negative-fields",
        action="store_true",
        help="render every triggered negative search field, not only those of rules "
        "that also matched",
    )
    p_analyze.add_argument(
        "--clock",
        help="fixed ISO-8601 timestamp for reproducible report output",
    )

    p_eval = sub.add_parser("eval", help="score predictions against gold annotations")
    _common_flags(p_eval)
    p_eval.add_argument("--corpus", type=Path, help="corpus directory to analyze")
    p_eval.add_argument(
        "--annotations", type=Path, help="existing annotations.jsonl to score instead"
    )
    p_eval.add_argument("--gold", required=True, type=Path, help="gold TSV file")
    p_eval.add_argument("--report", type=Path, help="also write the report as JSON")
    p_eval.add_argument("--rules", type=Path, help="rule file override")
    p_eval.add_argument("--variables", type=Path, help="variable file override")
    p_eval.add_argument("--semantic-map", type=Path, help="semantic map override")
    p_eval.add_argument("--lexicon-dir", type=Path, help="extra lexicon directory")
    return parser


def _merge_config(args: argparse.Namespace) -> Config:
    cfg = load_config(args.config) if args.config else Config()
    if getattr(args, "min_run_chars", None) is not None:
        cfg.min_run_chars = args.min_run_chars
    if getattr(args, "boundaries", None):
        cfg.boundaries = parse_boundaries(args.boundaries)
    if getattr(args, "strict_adjacency", False):
        cfg.strict_adjacency = True
    if getattr(args, "show_all_negative_fields", False):
        cfg.show_all_negative_fields = True
    for attr, key in (
        ("rules", "rules_path"),
        ("variables", "variables_path"),
        ("semantic_map", "semantic_map_path"),
        ("lexicon_dir", "lexicon_dir"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            setattr(cfg, key, value)
    if getattr(args, "jobs", None):
        cfg.parallelism = args.jobs
    return cfg.validate()


def _engine_from_config(cfg: Config):
    return load_engine(
        rules_path=cfg.rules_path,
        variables_path=cfg.variables_path,
        semantic_map_path=cfg.semantic_map_path,
        lexicon_dir=cfg.lexicon_dir,
        boundaries=cfg.boundaries,
        punct_transparent=not cfg.strict_adjacency,
    )


def _read_corpus_dir(corpus_dir: Path) -> list[corpus_mod.Document]:
    if not corpus_dir.is_dir():
        raise corpus_mod.CorpusError(f"corpus directory not found: {corpus_dir}")
    files = sorted(corpus_dir.glob("*.corpus.txt"))
    docs = []
    for path in files:
        docs.append(corpus_mod.parse_corpus_file(path.read_text(encoding="utf-8")))
    return docs


def cmd_ingest(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    out_dir = args.out or Path("corpus")
    source = args.input
    if not source.exists():
        print(f"error: input not readable: {source}", file=sys.stderr)
        return EXIT_ERROR

    pages: list[corpus_mod.RawPage] = []
    failures = 0
    if source.is_dir():
        html_files = sorted(
            p for p in source.iterdir() if p.suffix.lower() in (".html", ".htm")
        )
        for path in html_files:
            try:
                pages.append(corpus_mod.read_local_page(path))
            except (OSError, corpus_mod.CorpusError) as exc:
                print(f"skipping {path}: {exc}", file=sys.stderr)
                failures += 1
    else:
        urls = [
            line.strip()
            for line in source.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        fetched = corpus_mod.fetch_pages(urls, politeness_delay=args.delay / 1000.0)
        pages = fetched.pages
        for failure in fetched.failures:
            print(f"fetch failed {failure.url}: {failure.reason}", file=sys.stderr)
        failures = len(fetched.failures)

    documents = []
    rejected = failures
    for page in pages:
        try:
            documents.append(corpus_mod.extract_document(page, cfg.min_run_chars))
        except corpus_mod.CorpusError:
            rejected += 1
    before = len(documents)
    documents = corpus_mod.dedupe_documents(documents)
    rejected += before - len(documents)

    out_dir.mkdir(parents=True, exist_ok=True)
    for doc in documents:
        (out_dir / f"{doc.id}.corpus.txt").write_text(
            corpus_mod.compile_corpus_file(doc), encoding="utf-8", newline="\n"
        )
    pages_in = len(pages) + failures
    print(f"pages={pages_in} documents={len(documents)} rejected={rejected}")
    return EXIT_OK if documents else EXIT_EMPTY


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    out_dir = args.out or Path("out")
    clock = None
    if args.clock:
        clock = datetime.fromisoformat(args.clock)
        if clock.tzinfo is None:
            clock = clock.replace(tzinfo=timezone.utc)
    engine = _engine_from_config(cfg)
    docs = _read_corpus_dir(args.corpus)
    analyses = engine.analyze_corpus(docs, jobs=cfg.parallelism)

    annotations = [a for analysis in analyses for a in analysis.annotations]
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "annotations.jsonl").write_text(
        dump_annotations(annotations), encoding="utf-8", newline="\n"
    )
    write_reports(
        out_dir / "reports",
        analyses,
        generated_at=clock,
        show_all_negative_fields=cfg.show_all_negative_fields,
        class_order=eval_mod.CLASS_LABELS,
    )
    n_sentences = sum(len(a.sentences) for a in analyses)
    n_future = len(eval_mod.predictions_to_triples(annotations))
    print(f"sentences={n_sentences} future={n_future}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    if not args.annotations and not args.corpus:
        print("error: eval needs --annotations or --corpus", file=sys.stderr)
        return EXIT_ERROR
    gold = eval_mod.load_gold(args.gold.read_text(encoding="utf-8"))
    total_sentences = 0
    if args.annotations:
        annotations = load_annotations(args.annotations.read_text(encoding="utf-8"))
    else:
        engine = _engine_from_config(cfg)
        docs = _read_corpus_dir(args.corpus)
        analyses = engine.analyze_corpus(docs, jobs=cfg.parallelism)
        annotations = [a for analysis in analyses for a in analysis.annotations]
        total_sentences = sum(len(a.sentences) for a in analyses)

    report = eval_mod.score(annotations, gold, total_sentences=total_sentences)
    print(eval_mod.format_distribution(gold))
    print()
    print(eval_mod.format_results(report))
    if args.report:
        import json

        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(
            json.dumps(eval_mod.report_to_json_dict(report), ensure_ascii=False, indent=2)
            + "\n",
            encoding="utf-8",
        )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "ingest":
            return cmd_ingest(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "eval":
            return cmd_eval(args)
    except (ConfigError, RuleParseError, corpus_mod.CorpusError,
            eval_mod.GoldFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    parser.error(f"unknown command {args.command!r}")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
