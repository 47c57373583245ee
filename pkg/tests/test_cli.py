from __future__ import annotations

import http.server
import json
import threading

import pytest

from arfuture.cli import main

LONG_PARA = ("النمو الاقتصادي في لبنان سوف يتحسن " * 4).strip()  # 139 chars


def page(body_paragraph: str, title: str = "عنوان") -> str:
    return f"<html><head><title>{title}</title></head><body><p>{body_paragraph}</p></body></html>"


@pytest.fixture()
def html_dir(tmp_path):
    src = tmp_path / "html"
    src.mkdir()
    (src / "a.html").write_text(page(LONG_PARA + " الاول"), encoding="utf-8")
    (src / "b.html").write_text(page(LONG_PARA + " الثاني"), encoding="utf-8")
    (src / "c.html").write_text(page("قصير جدا"), encoding="utf-8")  # below threshold
    return src


class TestIngest:
    def test_threshold_behavior(self, html_dir, tmp_path, capsys):
        out = tmp_path / "corpus"
        code = main(["ingest", "--input", str(html_dir), "--out", str(out)])
        assert code == 0
        assert len(list(out.glob("*.corpus.txt"))) == 2
        assert "pages=3 documents=2 rejected=1" in capsys.readouterr().out

    def test_empty_dir_exits_1(self, tmp_path, capsys):
        src = tmp_path / "empty"
        src.mkdir()
        code = main(["ingest", "--input", str(src), "--out", str(tmp_path / "c")])
        assert code == 1

    def test_unreadable_input_exits_2(self, tmp_path):
        code = main(["ingest", "--input", str(tmp_path / "nope"), "--out", str(tmp_path / "c")])
        assert code == 2

    def test_min_run_chars_flag(self, html_dir, tmp_path):
        out = tmp_path / "corpus"
        code = main(
            ["ingest", "--input", str(html_dir), "--out", str(out), "--min-run-chars", "5"]
        )
        assert code == 0
        assert len(list(out.glob("*.corpus.txt"))) == 3

    def test_url_list_mode_against_local_server(self, html_dir, tmp_path, capsys):
        handler = lambda *a, **kw: http.server.SimpleHTTPRequestHandler(
            *a, directory=str(html_dir), **kw
        )
        server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), handler)
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        try:
            port = server.server_address[1]
            url_list = tmp_path / "urls.txt"
            url_list.write_text(
                f"http://127.0.0.1:{port}/a.html\n"
                f"http://127.0.0.1:{port}/b.html\n"
                f"http://127.0.0.1:{port}/missing.html\n",
                encoding="utf-8",
            )
            out = tmp_path / "corpus"
            code = main(
                ["ingest", "--input", str(url_list), "--out", str(out), "--delay", "0"]
            )
            assert code == 0
            assert len(list(out.glob("*.corpus.txt"))) == 2
            assert "pages=3 documents=2 rejected=1" in capsys.readouterr().out
        finally:
            server.shutdown()
            server.server_close()


class TestAnalyze:
    def test_mini_gold_summary(self, mini_gold_dir, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(
            ["analyze", "--corpus", str(mini_gold_dir), "--out", str(out),
             "--clock", "2026-01-01T00:00:00+00:00"]
        )
        assert code == 0
        assert "sentences=8 future=12" in capsys.readouterr().out
        assert (out / "annotations.jsonl").exists()
        assert (out / "reports" / "index.html").exists()

    def test_reruns_are_byte_identical(self, mini_gold_dir, tmp_path):
        outs = []
        for name in ("one", "two"):
            out = tmp_path / name
            code = main(
                ["analyze", "--corpus", str(mini_gold_dir), "--out", str(out),
                 "--clock", "2026-01-01T00:00:00+00:00", "--jobs", "3"]
            )
            assert code == 0
            blob = {
                p.name: p.read_bytes()
                for p in sorted(out.rglob("*"))
                if p.is_file()
            }
            outs.append(blob)
        assert outs[0] == outs[1]

    def test_empty_corpus_docs(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        code = main(["analyze", "--corpus", str(corpus), "--out", str(tmp_path / "o")])
        assert code == 0
        assert "sentences=0 future=0" in capsys.readouterr().out

    def test_missing_corpus_dir_exits_2(self, tmp_path, capsys):
        code = main(["analyze", "--corpus", str(tmp_path / "nope"), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "corpus directory not found" in capsys.readouterr().err

    def test_boundaries_flag_changes_segmentation(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        (corpus / "d.corpus.txt").write_text(
            "URL: http://x\nTITLE: t\n\nهل يرتفع النمو؟ سوف يرتفع.\n",
            encoding="utf-8",
        )
        main(["analyze", "--corpus", str(corpus), "--out", str(tmp_path / "a")])
        default_out = capsys.readouterr().out
        assert "sentences=2" in default_out
        main(["analyze", "--corpus", str(corpus), "--out", str(tmp_path / "b"),
              "--boundaries", "dot-space"])
        assert "sentences=1" in capsys.readouterr().out

    def test_strict_adjacency_flag_blocks_punct_gaps(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        (corpus / "d.corpus.txt").write_text(
            'URL: http://x\nTITLE: t\n\nمن "المتوقع" حدوث ذلك.\n',
            encoding="utf-8",
        )
        main(["analyze", "--corpus", str(corpus), "--out", str(tmp_path / "a")])
        assert "future=1" in capsys.readouterr().out
        main(["analyze", "--corpus", str(corpus), "--out", str(tmp_path / "b"),
              "--strict-adjacency"])
        assert "future=0" in capsys.readouterr().out

    def test_bad_rules_file_exits_2(self, mini_gold_dir, tmp_path, capsys):
        bad = tmp_path / "rules.txt"
        bad.write_text("::مجهول -> مستقبل\n", encoding="utf-8")
        code = main(
            ["analyze", "--corpus", str(mini_gold_dir), "--out", str(tmp_path / "o"),
             "--rules", str(bad)]
        )
        assert code == 2
        assert "line 1" in capsys.readouterr().err

    def test_config_file_paths_validated(self, mini_gold_dir, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("rules_path = /nonexistent/rules.txt\n", encoding="utf-8")
        code = main(
            ["analyze", "--corpus", str(mini_gold_dir), "--out", str(tmp_path / "o"),
             "--config", str(cfg)]
        )
        assert code == 2


class TestEval:
    def test_mini_gold_end_to_end(self, mini_gold_dir, tmp_path, capsys):
        report_path = tmp_path / "report.json"
        code = main(
            ["eval", "--corpus", str(mini_gold_dir),
             "--gold", str(mini_gold_dir / "gold.tsv"),
             "--report", str(report_path)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "Overall" in out
        data = json.loads(report_path.read_text(encoding="utf-8"))
        assert set(data) == {"per_class", "overall", "totals"}
        for cs in data["per_class"].values():
            if cs["tp"] + cs["fn"] > 0:
                assert cs["recall"] == "100.00"
        assert data["overall"]["recall"] == "100.00"
        assert data["totals"]["sentences"] == 8

    def test_unmatched_gold_row_lowers_recall(self, mini_gold_dir, tmp_path, capsys):
        gold = (mini_gold_dir / "gold.tsv").read_text(encoding="utf-8")
        extra = gold + "deadbeef0000\t0\tqad\n"
        gold_path = tmp_path / "gold.tsv"
        gold_path.write_text(extra, encoding="utf-8")
        report_path = tmp_path / "report.json"
        code = main(
            ["eval", "--corpus", str(mini_gold_dir), "--gold", str(gold_path),
             "--report", str(report_path)]
        )
        assert code == 0
        data = json.loads(report_path.read_text(encoding="utf-8"))
        assert data["per_class"]["qad"]["recall"] == "50.00"

    def test_annotations_input_mode(self, mini_gold_dir, tmp_path):
        out = tmp_path / "out"
        assert main(["analyze", "--corpus", str(mini_gold_dir), "--out", str(out)]) == 0
        code = main(
            ["eval", "--annotations", str(out / "annotations.jsonl"),
             "--gold", str(mini_gold_dir / "gold.tsv")]
        )
        assert code == 0

    def test_gold_parse_error_exits_2(self, mini_gold_dir, tmp_path, capsys):
        bad = tmp_path / "gold.tsv"
        bad.write_text("d\t0\tnot-a-class\n", encoding="utf-8")
        code = main(["eval", "--corpus", str(mini_gold_dir), "--gold", str(bad)])
        assert code == 2

    def test_needs_some_input(self, mini_gold_dir):
        code = main(["eval", "--gold", str(mini_gold_dir / "gold.tsv")])
        assert code == 2
