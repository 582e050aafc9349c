"""Ingest document dumps and filter a corpus by categories and keywords.

Dumps are UTF-8 JSON Lines: one record per line with fields id, source,
kind, title, authors, year, body_text, categories, url (absent fields
omitted).  Ingestion deduplicates on normalised title + source.
"""

from pathlib import Path

from mair.corpus import CorpusFilter, filter_corpus, ingest

FIXTURES = Path(__file__).parent / "fixtures"

papers = ingest(FIXTURES / "docs_papers.jsonl")
policies = ingest(FIXTURES / "docs_policy.jsonl")
print(f"{len(papers)} papers, {len(policies)} policy documents")

# Keep papers whose title mentions interpretability-flavoured keywords.
corpus_filter = CorpusFilter(
    keywords=frozenset({"interpretable", "explanation", "attribution"}),
)
kept = filter_corpus(papers, corpus_filter)
print(f"{len(kept)} papers match the keyword filter:")
for doc in kept:
    print(f"  {doc.id:12} {doc.title}")

# Category codes match as well; every record in this dump carries cs.AI.
by_category = filter_corpus(papers, CorpusFilter(categories=frozenset({"cs.AI"})))
print(f"{len(by_category)} papers carry the cs.AI category")
