"""Document model, dump ingestion, and corpus filtering.

Documents arrive as line-oriented UTF-8 dumps (one JSON record per line,
absent fields omitted) produced offline from the policy/paper sources.
Ingestion deduplicates on a normalised-title + source key and skips
malformed records with a logged count.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Mapping, Sequence

__all__ = [
    "SOURCES",
    "KINDS",
    "DOCUMENT_FUNCTIONS",
    "Document",
    "CorpusFilter",
    "EmptyIngestError",
    "ingest",
    "filter_corpus",
    "dedup_key",
]

logger = logging.getLogger(__name__)

SOURCES = ("oecd", "nesta", "arxiv")
KINDS = ("policy", "paper")

#: Six-way document-function taxonomy for policy texts.
DOCUMENT_FUNCTIONS = (
    "diagnosis",
    "principles",
    "strategies",
    "pre_regulations",
    "regulations",
    "body",
)

_WS = re.compile(r"\s+")


class EmptyIngestError(ValueError):
    """A dump file yielded zero valid records."""


@dataclass(frozen=True)
class Document:
    """One policy document or research paper.

    ``abstract`` and ``journal_ref`` are optional metadata carried for
    keyword filtering of metadata-only paper records.
    """

    id: str
    source: str
    kind: str
    title: str
    authors: tuple[str, ...] = ()
    year: int | None = None
    body_text: str | None = None
    latex_source: str | None = None
    categories: tuple[str, ...] = ()
    function: str | None = None
    url: str | None = None
    abstract: str | None = None
    journal_ref: str | None = None

    def __post_init__(self) -> None:
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "paper" and self.source != "arxiv":
            raise ValueError(f"paper documents come from arxiv, not {self.source!r}")
        if self.kind == "policy" and self.source not in ("oecd", "nesta"):
            raise ValueError(f"policy documents come from oecd/nesta, not {self.source!r}")
        if self.year is not None and not 1900 <= self.year <= 2100:
            raise ValueError(f"year {self.year} outside [1900, 2100]")
        if self.function is not None and self.function not in DOCUMENT_FUNCTIONS:
            raise ValueError(f"unknown function {self.function!r}")

    def to_record(self) -> dict:
        record: dict = {"id": self.id, "source": self.source, "kind": self.kind, "title": self.title}
        if self.authors:
            record["authors"] = list(self.authors)
        for key in ("year", "body_text", "latex_source", "function", "url", "abstract", "journal_ref"):
            value = getattr(self, key)
            if value is not None:
                record[key] = value
        if self.categories:
            record["categories"] = list(self.categories)
        return record

    @classmethod
    def from_record(cls, record: Mapping, default_source: str | None = None) -> "Document":
        known = {f.name for f in fields(cls)}
        data = {k: v for k, v in record.items() if k in known}
        if "source" not in data and default_source is not None:
            data["source"] = default_source
        if "authors" in data:
            data["authors"] = tuple(data["authors"])
        if "categories" in data:
            data["categories"] = tuple(data["categories"])
        return cls(**data)


def dedup_key(doc: Document) -> tuple[str, str]:
    """Case-folded, whitespace-collapsed title plus source."""
    return _WS.sub(" ", doc.title.casefold()).strip(), doc.source


def ingest(dump_path: str | Path, source: str | None = None) -> list[Document]:
    """Read a line-oriented dump into deduplicated documents.

    Records carry their own ``source``; ``source`` here is the default for
    records that omit it.  Malformed records (bad JSON, missing fields,
    invariant violations) are skipped and counted in the log.  A dump with
    zero valid records raises :class:`EmptyIngestError`.
    """
    docs: list[Document] = []
    seen: set[tuple[str, str]] = set()
    skipped = 0
    with open(dump_path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                doc = Document.from_record(record, default_source=source)
            except (ValueError, TypeError, KeyError) as exc:
                skipped += 1
                logger.warning("%s line %d: skipping malformed record (%s)", dump_path, line_no, exc)
                continue
            key = dedup_key(doc)
            if key in seen:
                continue
            seen.add(key)
            docs.append(doc)
    if skipped:
        logger.warning("%s: skipped %d malformed record(s)", dump_path, skipped)
    if not docs:
        raise EmptyIngestError(f"empty ingest: no valid records in {dump_path}")
    return docs


@dataclass(frozen=True)
class CorpusFilter:
    """Keep documents matching any listed category or any keyword.

    Keywords are case-insensitive substrings searched over the selected
    match fields (title, abstract, journal_ref).
    """

    categories: frozenset[str] = frozenset()
    keywords: frozenset[str] = frozenset()
    match_fields: tuple[str, ...] = ("title", "abstract", "journal_ref")

    def __post_init__(self) -> None:
        if not self.categories and not self.keywords:
            raise ValueError("filter needs at least one category or keyword")
        unknown = set(self.match_fields) - {"title", "abstract", "journal_ref"}
        if unknown:
            raise ValueError(f"unknown match fields: {sorted(unknown)}")

    def matches(self, doc: Document) -> bool:
        if self.categories and set(doc.categories) & self.categories:
            return True
        if not self.keywords:
            return False
        haystacks = [
            getattr(doc, name).casefold()
            for name in self.match_fields
            if getattr(doc, name) is not None
        ]
        return any(kw.casefold() in hay for kw in self.keywords for hay in haystacks)


def filter_corpus(docs: Iterable[Document], corpus_filter: CorpusFilter) -> list[Document]:
    """Documents matching the filter, input order preserved."""
    return [doc for doc in docs if corpus_filter.matches(doc)]


def write_dump(docs: Sequence[Document], path: str | Path) -> None:
    """Write documents back out in the ingestion dump format."""
    with open(path, "w", encoding="utf-8") as handle:
        for doc in docs:
            handle.write(json.dumps(doc.to_record(), sort_keys=True, ensure_ascii=False) + "\n")
