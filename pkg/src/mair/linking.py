"""Mining citation links from policy-document text to research papers.

A link is established either by an arXiv identifier appearing in the policy
body or by the paper's normalised title occurring as a substring with one of
its authors' last names nearby.  When a references/bibliography section can
be detected by a header keyword, scanning is restricted to it.

Two guards control title matching noise: titles shorter than
``min_title_len`` never link, and an author last name must appear within
``author_window`` characters of the title hit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import Document

__all__ = [
    "LinkEvidence",
    "BipartiteGraph",
    "PaperIndex",
    "extract_links",
    "graph_stats",
    "normalize_text",
]

#: arXiv identifiers: the new NNNN.NNNNN form and the legacy archive/NNNNNNN form.
ARXIV_ID_NEW = re.compile(r"\b(\d{4}\.\d{4,5})(?:v\d+)?\b")
ARXIV_ID_LEGACY = re.compile(r"\b([a-z-]+(?:\.[A-Z]{2})?/\d{7})(?:v\d+)?\b")

_SECTION_HEADERS = ("references", "bibliography", "works cited", "literature")

_PUNCT = re.compile(r"[^\w\s]")
_WS = re.compile(r"\s+")

DEFAULT_MIN_TITLE_LEN = 20
DEFAULT_AUTHOR_WINDOW = 300


def normalize_text(text: str) -> str:
    """Case-fold, strip punctuation, collapse whitespace."""
    return _WS.sub(" ", _PUNCT.sub(" ", text.casefold())).strip()


def _last_name(author: str) -> str:
    parts = normalize_text(author).split()
    return parts[-1] if parts else ""


@dataclass(frozen=True)
class LinkEvidence:
    policy_id: str
    paper_id: str
    method: str  # arxiv_id | title_author
    matched_span: str

    def to_record(self) -> dict:
        return {
            "id": f"link:{self.policy_id}:{self.paper_id}",
            "policy_id": self.policy_id,
            "paper_id": self.paper_id,
            "method": self.method,
            "matched_span": self.matched_span,
        }


@dataclass
class BipartiteGraph:
    """Directed policy -> paper citation edges with evidence."""

    policies: set[str] = field(default_factory=set)
    papers: set[str] = field(default_factory=set)
    edges: list[LinkEvidence] = field(default_factory=list)

    def add(self, evidence: LinkEvidence) -> bool:
        if any(e.policy_id == evidence.policy_id and e.paper_id == evidence.paper_id for e in self.edges):
            return False
        self.policies.add(evidence.policy_id)
        self.papers.add(evidence.paper_id)
        self.edges.append(evidence)
        return True


class PaperIndex:
    """Normalised titles, author last names, and arXiv ids for the papers."""

    def __init__(self, papers: Iterable[Document]) -> None:
        self.by_arxiv_id: dict[str, str] = {}
        self.titles: dict[str, str] = {}
        self.last_names: dict[str, tuple[str, ...]] = {}
        self._by_first_token: dict[str, list[str]] = {}
        for paper in papers:
            self.by_arxiv_id[paper.id] = paper.id
            title = normalize_text(paper.title)
            self.titles[paper.id] = title
            self.last_names[paper.id] = tuple(_last_name(a) for a in paper.authors if _last_name(a))
            if title:
                self._by_first_token.setdefault(title.split()[0], []).append(paper.id)

    def candidates_for(self, body_tokens: set[str]) -> list[str]:
        """Papers whose title's first token occurs in the body (pruning)."""
        out: list[str] = []
        for token, ids in self._by_first_token.items():
            if token in body_tokens:
                out.extend(ids)
        return sorted(out)

    def all_ids(self) -> list[str]:
        return sorted(self.titles)


def _scan_region(body: str) -> str:
    """Restrict to the references section when a header keyword is found."""
    lower = body.casefold()
    best = None
    for header in _SECTION_HEADERS:
        pattern = re.compile(rf"^\s*(?:\d+\.?\s*)?{header}\s*:?\s*$", re.MULTILINE)
        match = pattern.search(lower)
        if match and (best is None or match.start() < best):
            best = match.start()
    return body[best:] if best is not None else body


def extract_links(
    policy_docs: Iterable[Document],
    paper_index: PaperIndex,
    min_title_len: int = DEFAULT_MIN_TITLE_LEN,
    author_window: int = DEFAULT_AUTHOR_WINDOW,
    prune: bool = True,
) -> BipartiteGraph:
    """Scan each policy body for arXiv ids and title+author co-occurrences.

    Deduplicated edges; ids win over title matches for a given pair.  With
    ``prune`` a first-token index narrows the title candidates; results are
    identical to the exhaustive scan.
    """
    graph = BipartiteGraph()
    for policy in policy_docs:
        body = policy.body_text or ""
        if not body:
            continue
        region = _scan_region(body)

        for pattern in (ARXIV_ID_NEW, ARXIV_ID_LEGACY):
            for match in pattern.finditer(region):
                arxiv_id = match.group(1)
                if arxiv_id in paper_index.by_arxiv_id:
                    graph.add(
                        LinkEvidence(
                            policy_id=policy.id,
                            paper_id=paper_index.by_arxiv_id[arxiv_id],
                            method="arxiv_id",
                            matched_span=match.group(0),
                        )
                    )

        normalized = normalize_text(region)
        candidates = (
            paper_index.candidates_for(set(normalized.split())) if prune else paper_index.all_ids()
        )
        for paper_id in candidates:
            title = paper_index.titles[paper_id]
            if len(title) < min_title_len:
                continue
            start = normalized.find(title)
            found = False
            while start != -1 and not found:
                lo = max(0, start - author_window)
                hi = start + len(title) + author_window
                window = normalized[lo:hi]
                for name in paper_index.last_names[paper_id]:
                    if re.search(rf"\b{re.escape(name)}\b", window):
                        found = True
                        break
                start = normalized.find(title, start + 1)
            if found:
                graph.add(
                    LinkEvidence(
                        policy_id=policy.id,
                        paper_id=paper_id,
                        method="title_author",
                        matched_span=title,
                    )
                )
    return graph


def graph_stats(graph: BipartiteGraph) -> dict[str, int]:
    cited_papers = {e.paper_id for e in graph.edges}
    citing_policies = {e.policy_id for e in graph.edges}
    return {
        "n_links": len(graph.edges),
        "n_citing_policies": len(citing_policies),
        "n_cited_papers": len(cited_papers),
    }
