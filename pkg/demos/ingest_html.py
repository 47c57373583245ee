"""Corpus construction in miniature: write two HTML pages to disk, run the
main-article extractor over them, and show the resulting corpus files."""

import tempfile
from pathlib import Path

from arfuture.corpus import (
    build_query_list,
    compile_corpus_file,
    extract_document,
    load_query_seeds,
    read_local_page,
)
from arfuture.resources import data_dir

# the query strings one would feed a search engine to collect real pages
seeds = load_query_seeds((data_dir() / "keywords.tsv").read_text(encoding="utf-8"))
print("first three search queries:")
for query in build_query_list(seeds)[:3]:
    print("   ", query)
print()

filler = "النمو الاقتصادي في لبنان سوف يتحسن خلال العام المقبل باذن الله " * 3

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    (tmp / "article.html").write_text(
        "<html><head><title>اقتصاد لبنان</title></head><body>"
        "<nav>الرئيسية | اقتصاد | سياسة</nav>"
        f"<p>{filler}</p>"
        "<footer>جميع الحقوق محفوظة</footer>"
        "</body></html>",
        encoding="utf-8",
    )
    page = read_local_page(tmp / "article.html")
    doc = extract_document(page)
    print("extracted document", doc.id)
    print("title:", doc.title)
    print("body starts:", doc.body[:60], "...")
    print()
    print("serialized corpus file:")
    print(compile_corpus_file(doc)[:160], "...")
