"""Deontic analytics over tagged statements.

Covers three views: object frequency contrasts between the paper and policy
corpora, per-object deontic share profiles with ternary coordinates, and
word trees capturing the token contexts around a pivot phrase.

Deontic shares are normalised in two stages: each per-object deontic count
is first divided by the corpus-level total for that deontic (removing the
base-rate effect of some deontics simply being more frequent in one corpus),
then the three rates are renormalised to sum to one per (object, corpus).
The formula is isolated in :func:`_normalise_shares` so an alternative
normalisation can be swapped in.
"""

from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .ig import DEONTIC_CLASSES, IgStatement

__all__ = [
    "CORPORA",
    "DEFAULT_FOCAL_OBJECTS",
    "DEFAULT_MIN_COUNT",
    "ObjectFrequency",
    "DeonticProfile",
    "WordTreeNode",
    "WordTree",
    "object_frequencies",
    "deontic_profiles",
    "word_tree",
    "write_frequencies_csv",
    "write_profiles_csv",
    "write_word_tree_json",
]

CORPORA = ("papers", "policy")

#: Focal objects examined in the shipped analyses; override per run.
DEFAULT_FOCAL_OBJECTS = ("agent", "machine", "human", "ai", "people", "algorithm", "user", "system")

#: Frequency floor: objects are reported only above this many occurrences.
DEFAULT_MIN_COUNT = 40


@dataclass(frozen=True)
class ObjectFrequency:
    object_lemma: str
    count_papers: int
    count_policy: int

    @property
    def total(self) -> int:
        return self.count_papers + self.count_policy


@dataclass(frozen=True)
class DeonticProfile:
    object_lemma: str
    corpus: str
    share_shall: float
    share_must: float
    share_can: float

    @property
    def ternary(self) -> tuple[float, float, float]:
        """Plot coordinates, ordered (can, shall, must)."""
        return (self.share_can, self.share_shall, self.share_must)


def _object_lemmas(statement: IgStatement) -> set[str]:
    return {obj.lemma for obj in statement.objects}


def object_frequencies(
    statements: Iterable[tuple[str, IgStatement]],
    min_count: int = DEFAULT_MIN_COUNT,
) -> list[ObjectFrequency]:
    """Per-object statement counts, contrasted across the two corpora.

    ``statements`` pairs each statement with its corpus label ("papers" or
    "policy").  A statement counts once per distinct object lemma.  Rows
    where neither corpus count exceeds ``min_count`` are dropped; the rest
    sort by descending total (object lemma breaks ties).
    """
    counts: dict[str, Counter] = {corpus: Counter() for corpus in CORPORA}
    for corpus, statement in statements:
        if corpus not in counts:
            raise ValueError(f"unknown corpus label {corpus!r}")
        for lemma in _object_lemmas(statement):
            counts[corpus][lemma] += 1
    lemmas = set(counts["papers"]) | set(counts["policy"])
    rows = [
        ObjectFrequency(lemma, counts["papers"][lemma], counts["policy"][lemma])
        for lemma in lemmas
    ]
    rows = [r for r in rows if max(r.count_papers, r.count_policy) > min_count]
    return sorted(rows, key=lambda r: (-r.total, r.object_lemma))


def _normalise_shares(
    object_counts: Mapping[str, int], corpus_totals: Mapping[str, int]
) -> dict[str, float] | None:
    """Two-stage normalisation of one object's deontic counts.

    Stage one divides by the corpus-wide deontic totals; stage two rescales
    to a unit sum.  None when the object never occurs in the corpus.
    """
    rates = {
        d: (object_counts.get(d, 0) / corpus_totals[d]) if corpus_totals.get(d) else 0.0
        for d in DEONTIC_CLASSES
    }
    denominator = sum(rates.values())
    if denominator == 0.0:
        return None
    return {d: rates[d] / denominator for d in DEONTIC_CLASSES}


def deontic_profiles(
    statements: Iterable[tuple[str, IgStatement]],
    objects: Sequence[str] = DEFAULT_FOCAL_OBJECTS,
) -> list[DeonticProfile]:
    """Normalised deontic shares per (object, corpus).

    Negated statements are expected to be excluded upstream.  An object
    absent from a corpus yields no profile for that corpus.
    """
    corpus_totals: dict[str, Counter] = {c: Counter() for c in CORPORA}
    object_counts: dict[tuple[str, str], Counter] = {}
    wanted = set(objects)
    for corpus, statement in statements:
        if corpus not in corpus_totals:
            raise ValueError(f"unknown corpus label {corpus!r}")
        corpus_totals[corpus][statement.deontic_class] += 1
        for lemma in _object_lemmas(statement) & wanted:
            object_counts.setdefault((corpus, lemma), Counter())[statement.deontic_class] += 1

    profiles: list[DeonticProfile] = []
    for corpus in CORPORA:
        for lemma in objects:
            counts = object_counts.get((corpus, lemma))
            if not counts:
                continue
            shares = _normalise_shares(counts, corpus_totals[corpus])
            if shares is None:
                continue
            profiles.append(
                DeonticProfile(
                    object_lemma=lemma,
                    corpus=corpus,
                    share_shall=shares["shall"],
                    share_must=shares["must"],
                    share_can=shares["can"],
                )
            )
    return profiles


@dataclass
class WordTreeNode:
    """One context token; ``ends`` counts contexts terminating here."""

    count: int = 0
    ends: int = 0
    children: dict[str, "WordTreeNode"] = field(default_factory=dict)


@dataclass
class WordTree:
    pivot: str
    direction: str
    root: WordTreeNode

    def to_dict(self) -> dict:
        def node_dict(node: WordTreeNode) -> dict:
            return {
                "count": node.count,
                "ends": node.ends,
                "children": {tok: node_dict(child) for tok, child in sorted(node.children.items())},
            }

        return {"pivot": self.pivot, "direction": self.direction, "root": node_dict(self.root)}


def word_tree(
    sentences: Iterable[Sequence[str]],
    pivot: str,
    direction: str = "forward",
    max_depth: int = 5,
) -> WordTree:
    """Trie of the token contexts adjacent to each pivot occurrence.

    ``pivot`` is a whitespace-separated token phrase, matched casefolded.
    Forward trees follow the tokens after the pivot; backward trees walk the
    preceding tokens nearest-first.  Contexts are truncated at ``max_depth``.
    """
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be forward or backward, got {direction!r}")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    pivot_tokens = [t.casefold() for t in pivot.split()]
    if not pivot_tokens:
        raise ValueError("empty pivot")

    root = WordTreeNode()
    for sentence in sentences:
        tokens = [t.casefold() for t in sentence]
        width = len(pivot_tokens)
        for start in range(len(tokens) - width + 1):
            if tokens[start : start + width] != pivot_tokens:
                continue
            if direction == "forward":
                context = tokens[start + width : start + width + max_depth]
            else:
                lo = max(0, start - max_depth)
                context = tokens[lo:start][::-1]
            root.count += 1
            node = root
            for token in context:
                node = node.children.setdefault(token, WordTreeNode())
                node.count += 1
            node.ends += 1
    return WordTree(pivot=pivot, direction=direction, root=root)


# --- File outputs ---------------------------------------------------------


def write_frequencies_csv(rows: Sequence[ObjectFrequency], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["object_lemma", "count_papers", "count_policy", "total"])
        for row in rows:
            writer.writerow([row.object_lemma, row.count_papers, row.count_policy, row.total])


def write_profiles_csv(profiles: Sequence[DeonticProfile], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["object_lemma", "corpus", "share_shall", "share_must", "share_can",
             "tern_can", "tern_shall", "tern_must"]
        )
        for p in profiles:
            tern = p.ternary
            writer.writerow(
                [p.object_lemma, p.corpus, repr(p.share_shall), repr(p.share_must),
                 repr(p.share_can), repr(tern[0]), repr(tern[1]), repr(tern[2])]
            )


def write_word_tree_json(tree: WordTree, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(tree.to_dict(), handle, sort_keys=True, ensure_ascii=False, indent=2)
        handle.write("\n")
