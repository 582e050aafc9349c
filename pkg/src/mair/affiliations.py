"""Affiliation extraction from LaTeX paper sources.

Four steps: locate affiliation-bearing spans via markup commands, extract
institution mentions from each span, match mentions to canonical institution
names (alias table, then email domain, then an optional knowledge-base
client), and classify each institution as academia or industry.

The knowledge-base client is an HTTP integration with a mandatory on-disk
response cache so every lookup can be served offline from recorded fixtures.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

__all__ = [
    "DEFAULT_AFFILIATION_TAGS",
    "Mention",
    "AffiliationRecord",
    "AliasTable",
    "KbClient",
    "locate",
    "extract",
    "match",
    "classify",
    "extract_affiliations",
    "normalize_institution",
]

logger = logging.getLogger(__name__)

#: LaTeX commands whose arguments carry affiliations; extendable per corpus.
DEFAULT_AFFILIATION_TAGS = (
    "affil",
    "affiliation",
    "institute",
    "institution",
    "address",
    "icmlaffiliation",
    "IEEEauthorblockA",
    "affaddr",
)

_ACADEMIA_WORDS = ("university", "institute", "school", "academy", "college", "polytechnic", "faculty")
_INDUSTRY_WORDS = ("inc", "ltd", "gmbh", "labs", "corporation", "llc", "company")

_EMAIL = re.compile(r"[\w.+-]+@([\w-]+(?:\.[\w-]+)+)")

#: Leading department-style qualifiers stripped during normalisation.
_DEPARTMENT = re.compile(
    r"^(?:dept\.?|department|faculty|school|division|laboratory|lab|chair|group)\s+(?:of|for)\s+[^,]*,?\s*",
    re.IGNORECASE,
)

_ABBREVIATIONS = {
    "univ": "university",
    "inst": "institute",
    "tech": "technology",
    "natl": "national",
    "dept": "department",
}


@dataclass(frozen=True)
class Mention:
    """One institution mention found inside a located span."""

    name: str | None
    qualifier: str | None = None
    email_domains: tuple[str, ...] = ()


@dataclass(frozen=True)
class AffiliationRecord:
    doc_id: str
    surface: str
    canonical: str | None
    sector: str  # academia | industry | none
    evidence: str  # latex_tag | email_domain | alias_table | kb_lookup

    def __post_init__(self) -> None:
        if self.sector not in ("academia", "industry", "none"):
            raise ValueError(f"unknown sector {self.sector!r}")
        if self.evidence not in ("latex_tag", "email_domain", "alias_table", "kb_lookup"):
            raise ValueError(f"unknown evidence {self.evidence!r}")
        if self.sector == "none" and self.canonical is not None:
            raise ValueError("resolved institutions carry a sector")

    def to_record(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "surface": self.surface,
            "canonical": self.canonical,
            "sector": self.sector,
            "evidence": self.evidence,
        }


def normalize_institution(name: str) -> str:
    """Case-fold, strip diacritics and departments, expand abbreviations."""
    text = unicodedata.normalize("NFKD", name)
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    text = _DEPARTMENT.sub("", text.strip())
    text = re.sub(r"[^\w\s]", " ", text.casefold())
    words = [_ABBREVIATIONS.get(w, w) for w in text.split()]
    return " ".join(words)


class AliasTable:
    """Canonical institution names with alias strings and email domains.

    File format, one institution per line::

        canonical | alias,alias2 | domain,domain2 | sector

    Alias sets must be disjoint across canonical names; sector is academia
    or industry.
    """

    def __init__(self, entries: Mapping[str, tuple[Sequence[str], Sequence[str], str]]) -> None:
        self._sector: dict[str, str] = {}
        self._by_alias: dict[str, str] = {}
        self._by_domain: dict[str, str] = {}
        for canonical, (aliases, domains, sector) in entries.items():
            if sector not in ("academia", "industry"):
                raise ValueError(f"{canonical}: sector must be academia or industry, got {sector!r}")
            self._sector[canonical] = sector
            for alias in {normalize_institution(a) for a in (canonical, *aliases)}:
                if alias in self._by_alias and self._by_alias[alias] != canonical:
                    raise ValueError(f"alias {alias!r} maps to both {self._by_alias[alias]!r} and {canonical!r}")
                self._by_alias[alias] = canonical
            for domain in domains:
                self._by_domain[domain.casefold()] = canonical

    @classmethod
    def load(cls, path: str | Path) -> "AliasTable":
        entries: dict[str, tuple[list[str], list[str], str]] = {}
        with open(path, encoding="utf-8") as handle:
            for raw in handle:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                parts = [p.strip() for p in line.split("|")]
                if len(parts) != 4:
                    raise ValueError(f"alias table line needs 4 fields: {line!r}")
                canonical, aliases, domains, sector = parts
                entries[canonical] = (
                    [a.strip() for a in aliases.split(",") if a.strip()],
                    [d.strip() for d in domains.split(",") if d.strip()],
                    sector,
                )
        return cls(entries)

    def lookup_name(self, mention: str) -> str | None:
        return self._by_alias.get(normalize_institution(mention))

    def lookup_domain(self, domain: str) -> str | None:
        domain = domain.casefold()
        while domain:
            hit = self._by_domain.get(domain)
            if hit:
                return hit
            _, _, domain = domain.partition(".")
        return None

    def sector_of(self, canonical: str) -> str | None:
        return self._sector.get(canonical)


class KbClient:
    """Cached HTTP lookup of institution names.

    Responses are stored under the cache directory keyed by the normalised
    name, so recorded fixtures satisfy lookups offline.  With
    ``offline=True`` the network is never touched; network failures degrade
    to a cache-only answer with a warning.
    """

    def __init__(self, base_url: str, cache_dir: str | Path, offline: bool = False, timeout: float = 10.0) -> None:
        self.base_url = base_url.rstrip("/")
        self.cache_dir = Path(cache_dir)
        self.offline = offline
        self.timeout = timeout

    def _cache_path(self, name: str) -> Path:
        digest = hashlib.sha256(normalize_institution(name).encode("utf-8")).hexdigest()[:24]
        return self.cache_dir / f"{digest}.json"

    def lookup(self, name: str) -> dict | None:
        """Returns ``{"canonical": ..., "tags": [...]}`` or None."""
        cache_path = self._cache_path(name)
        if cache_path.exists():
            return json.loads(cache_path.read_text(encoding="utf-8"))
        if self.offline:
            return None
        try:
            import requests

            response = requests.get(
                self.base_url, params={"q": normalize_institution(name)}, timeout=self.timeout
            )
            response.raise_for_status()
            payload = response.json()
        except Exception as exc:
            logger.warning("knowledge-base lookup failed for %r: %s", name, exc)
            return None
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        cache_path.write_text(json.dumps(payload, sort_keys=True, ensure_ascii=False), encoding="utf-8")
        return payload


def _span_arguments_at(source: str, command: str) -> list[tuple[str, int]]:
    """(argument, end index) of every brace-balanced ``\\command{...}``."""
    spans: list[tuple[str, int]] = []
    for found in re.finditer(rf"\\{command}\b(?:\[[^\]]*\])?", source):
        pos = found.end()
        while pos < len(source) and source[pos].isspace():
            pos += 1
        if pos >= len(source) or source[pos] != "{":
            continue
        depth = 0
        start = pos + 1
        for i in range(pos, len(source)):
            if source[i] == "{":
                depth += 1
            elif source[i] == "}":
                depth -= 1
                if depth == 0:
                    spans.append((source[start:i], i + 1))
                    break
    return spans


def _span_arguments(source: str, command: str) -> list[str]:
    return [text for text, _ in _span_arguments_at(source, command)]


def locate(latex_source: str, tags: Sequence[str] = DEFAULT_AFFILIATION_TAGS) -> list[str]:
    """Spans that may carry affiliations.

    Only the arguments of the configured markup commands are returned, so
    institutions referred to in body prose are excluded by construction.
    When no tag matches but the source has an abstract, the header region
    between the title and the abstract is used as a fallback span.
    """
    spans: list[str] = []
    for tag in tags:
        spans.extend(_span_arguments(latex_source, tag))
    if spans:
        return spans
    abstract = latex_source.find(r"\begin{abstract}")
    if abstract != -1:
        title_spans = _span_arguments_at(latex_source[:abstract], "title")
        start = title_spans[-1][1] if title_spans else 0
        header = latex_source[start:abstract].strip()
        if re.search(r"[A-Za-z]", header):
            spans.append(header)
    return spans


_INSTITUTION_WORDS = _ACADEMIA_WORDS + _INDUSTRY_WORDS + (
    "laboratory",
    "lab",
    "center",
    "centre",
    "foundation",
    "agency",
    "technologies",
)

_QUALIFIER_HEAD = re.compile(r"^(?:dept\.?|department|faculty|school|division|laboratory|lab)\b", re.IGNORECASE)


def _looks_institutional(segment: str) -> bool:
    lowered = normalize_institution(segment)
    words = set(lowered.split())
    return any(w in words for w in _INSTITUTION_WORDS)


def extract(span: str) -> list[Mention]:
    """Institution mentions inside one located span.

    Splits multi-institution spans on separators and keeps the segments that
    carry an institutional keyword; everything else (person names, towns,
    postal fragments) is dropped.  Department-style segments become
    qualifiers on the next institutional segment, and email domains are
    collected as auxiliary evidence for the matching step.
    """
    domains = tuple(m.group(1) for m in _EMAIL.finditer(span))
    cleaned = _EMAIL.sub(" ", span)
    cleaned = re.sub(r"\\\\|\\and\b|\\quad\b", ";", cleaned)
    cleaned = re.sub(r"\\[a-zA-Z]+", " ", cleaned)
    cleaned = cleaned.replace("{", " ").replace("}", " ")
    segments = [s.strip() for s in re.split(r"[;,\n]", cleaned)]
    segments = [s for s in segments if s]

    mentions: list[Mention] = []
    pending_qualifier: str | None = None
    for segment in segments:
        if _QUALIFIER_HEAD.match(segment) and not _looks_institutional_name(segment):
            pending_qualifier = segment
            continue
        if _looks_institutional(segment):
            mentions.append(Mention(name=segment, qualifier=pending_qualifier, email_domains=domains))
            pending_qualifier = None
    if not mentions and domains:
        mentions.append(Mention(name=None, qualifier=None, email_domains=domains))
    return mentions


def _looks_institutional_name(segment: str) -> bool:
    """A department-style head that still names the institution itself."""
    lowered = normalize_institution(segment)
    words = lowered.split()
    return any(w in ("university", "institute", "college", "academy", "polytechnic") for w in words)


def match(mention: Mention | str, table: AliasTable, kb: KbClient | None = None) -> tuple[str | None, str]:
    """Resolve a mention to a canonical name; returns (canonical, evidence).

    Order: alias table by name, then email domain, then the knowledge base;
    the first hit wins.  Unresolved mentions return (None, "latex_tag").
    """
    if isinstance(mention, str):
        mention = Mention(name=mention)
    if mention.name:
        canonical = table.lookup_name(mention.name)
        if canonical:
            return canonical, "alias_table"
    for domain in mention.email_domains:
        canonical = table.lookup_domain(domain)
        if canonical:
            return canonical, "email_domain"
    if kb is not None and mention.name:
        payload = kb.lookup(mention.name)
        if payload and payload.get("canonical"):
            return payload["canonical"], "kb_lookup"
    return None, "latex_tag"


def classify(
    canonical: str,
    table: AliasTable,
    kb_tags: Iterable[str] | None = None,
) -> str:
    """Sector of a resolved institution: academia, industry, or none."""
    sector = table.sector_of(canonical)
    if sector:
        return sector
    words = set(normalize_institution(canonical).split())
    if words & set(_ACADEMIA_WORDS):
        return "academia"
    if words & set(_INDUSTRY_WORDS):
        return "industry"
    for tag in kb_tags or ():
        lowered = tag.casefold()
        if lowered in ("company", "business", "corporation", "enterprise"):
            return "industry"
        if lowered in ("university", "educational", "research institute", "academic"):
            return "academia"
    return "none"


def extract_affiliations(
    doc_id: str,
    latex_source: str,
    table: AliasTable,
    kb: KbClient | None = None,
    tags: Sequence[str] = DEFAULT_AFFILIATION_TAGS,
) -> list[AffiliationRecord]:
    """Run locate -> extract -> match -> classify over one paper source.

    A canonical match that no step can place in a sector is degraded back to
    unresolved rather than recorded with an unclassified canonical.
    """
    records: list[AffiliationRecord] = []
    seen: set[str] = set()
    for span in locate(latex_source, tags):
        for mention in extract(span):
            canonical, evidence = match(mention, table, kb)
            surface = mention.name or (mention.email_domains[0] if mention.email_domains else "")
            kb_tags: list[str] = []
            if kb is not None and canonical and evidence == "kb_lookup":
                payload = kb.lookup(mention.name or "")
                kb_tags = list(payload.get("tags", [])) if payload else []
            sector = classify(canonical, table, kb_tags) if canonical else "none"
            if canonical is not None and sector == "none":
                logger.warning("%s: %r resolved but not classifiable; treating as unresolved", doc_id, canonical)
                canonical, evidence = None, "latex_tag"
            key = canonical or surface
            if key in seen:
                continue
            seen.add(key)
            records.append(
                AffiliationRecord(
                    doc_id=doc_id,
                    surface=surface,
                    canonical=canonical,
                    sector=sector,
                    evidence=evidence,
                )
            )
    return records
