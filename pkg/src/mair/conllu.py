"""Reading and validating dependency-parsed sentences from CoNLL-U files.

Each sentence becomes an immutable :class:`SentenceTree` whose tokens carry
the columns the downstream rule system needs (surface form, lemma, universal
POS tag, head index, dependency relation, MISC annotations).  Multiword-token
ranges (``1-2``) and empty nodes (``1.1``) are skipped on read.  ``# sent_id``
and ``# newdoc id`` comments are honoured when present.

Dependency relation labels are normalised at read time: inputs using the UD
v2 names ``nsubj:pass`` / ``obj`` are rewritten to ``nsubjpass`` / ``dobj``
so the extraction rules can be written once against a single inventory.  The
mapping is a parameter of :func:`read_conllu` for parsers that emit other
label sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

__all__ = [
    "UPOS_TAGS",
    "DEFAULT_DEPREL_MAP",
    "Token",
    "SentenceTree",
    "ConlluParseError",
    "TreeValidationError",
    "read_conllu",
    "write_conllu",
    "children",
]

#: The 17 Universal POS tags (UD v2).
UPOS_TAGS = frozenset(
    "ADJ ADP ADV AUX CCONJ DET INTJ NOUN NUM PART PRON PROPN PUNCT SCONJ SYM VERB X".split()
)

#: Relation-label rewrites applied on read.  The rule system names relations
#: nsubj / nsubjpass / csubj / dobj / conj; UD v2 treebanks spell two of them
#: differently.  Extendable per input via the ``deprel_map`` argument.
DEFAULT_DEPREL_MAP: Mapping[str, str] = {
    "nsubj:pass": "nsubjpass",
    "obj": "dobj",
}


class ConlluParseError(ValueError):
    """Malformed CoNLL-U input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class TreeValidationError(ValueError):
    """A sentence violating the tree invariants; carries its sent_id."""

    def __init__(self, sent_id: str, message: str) -> None:
        super().__init__(f"sentence {sent_id!r}: {message}")
        self.sent_id = sent_id


@dataclass(frozen=True)
class Token:
    """One syntactic word of a parsed sentence."""

    index: int
    surface: str
    lemma: str
    upos: str
    head: int
    deprel: str
    misc: Mapping[str, str] = field(default_factory=dict)

    def misc_value(self, key: str) -> str | None:
        return self.misc.get(key)


@dataclass(frozen=True)
class SentenceTree:
    """A validated dependency tree over one sentence.

    Exactly one token has head 0 and every token is reachable from it; both
    are checked by :meth:`validate`, which every reader path goes through.
    """

    tokens: tuple[Token, ...]
    sent_id: str = ""
    doc_id: str = ""

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, index: int) -> Token:
        """Token by 1-based index."""
        return self.tokens[index - 1]

    @property
    def root(self) -> Token:
        for tok in self.tokens:
            if tok.head == 0:
                return tok
        raise TreeValidationError(self.sent_id, "no root token")

    def parent(self, tok: Token) -> Token | None:
        return None if tok.head == 0 else self.tokens[tok.head - 1]

    def validate(self) -> "SentenceTree":
        n = len(self.tokens)
        if n == 0:
            raise TreeValidationError(self.sent_id, "empty sentence")
        roots = [t for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise TreeValidationError(self.sent_id, f"expected one root, found {len(roots)}")
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.index != pos:
                raise TreeValidationError(self.sent_id, f"non-contiguous token index {tok.index}")
            if not 0 <= tok.head <= n:
                raise TreeValidationError(self.sent_id, f"token {tok.index}: head {tok.head} out of range")
            if tok.head == tok.index:
                raise TreeValidationError(self.sent_id, f"token {tok.index} heads itself")
            if tok.upos not in UPOS_TAGS:
                raise TreeValidationError(self.sent_id, f"token {tok.index}: unknown UPOS {tok.upos!r}")
        # Reachability from the root implies acyclicity for n-1 non-root arcs.
        kids: dict[int, list[int]] = {}
        for tok in self.tokens:
            kids.setdefault(tok.head, []).append(tok.index)
        seen: set[int] = set()
        stack = [roots[0].index]
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            stack.extend(kids.get(cur, ()))
        if len(seen) != n:
            unreached = sorted(set(range(1, n + 1)) - seen)
            raise TreeValidationError(
                self.sent_id, f"cycle detected: tokens {unreached} unreachable from root"
            )
        return self


def children(tree: SentenceTree, tok: Token, rel: str | None = None) -> list[Token]:
    """Dependents of ``tok`` in surface order, optionally filtered by relation.

    ``rel=None`` acts as a wildcard.
    """
    out = [t for t in tree.tokens if t.head == tok.index]
    if rel is not None:
        out = [t for t in out if t.deprel == rel]
    return out


def _parse_misc(text: str) -> dict[str, str]:
    if text in ("_", ""):
        return {}
    misc: dict[str, str] = {}
    for part in text.split("|"):
        key, _, value = part.partition("=")
        misc[key] = value
    return misc


def _format_misc(misc: Mapping[str, str]) -> str:
    if not misc:
        return "_"
    return "|".join(f"{k}={v}" for k, v in misc.items())


def read_conllu(
    path: str | Path,
    deprel_map: Mapping[str, str] = DEFAULT_DEPREL_MAP,
) -> list[SentenceTree]:
    """Parse a CoNLL-U file into validated sentence trees.

    Raises :class:`ConlluParseError` for malformed rows and
    :class:`TreeValidationError` when a sentence is not a single-rooted tree.
    """
    trees: list[SentenceTree] = []
    tokens: list[Token] = []
    sent_id = ""
    doc_id = ""
    sent_no = 0

    def flush() -> None:
        nonlocal tokens, sent_id, sent_no
        if not tokens:
            return
        sent_no += 1
        sid = sent_id or f"s{sent_no}"
        trees.append(SentenceTree(tuple(tokens), sent_id=sid, doc_id=doc_id).validate())
        tokens = []
        sent_id = ""

    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                flush()
                continue
            if line.startswith("#"):
                comment = line[1:].strip()
                key, _, value = comment.partition("=")
                key = key.strip()
                if key == "sent_id":
                    sent_id = value.strip()
                elif key == "newdoc id":
                    doc_id = value.strip()
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise ConlluParseError(line_no, f"expected 10 columns, got {len(cols)}")
            tok_id = cols[0]
            if "-" in tok_id or "." in tok_id:
                continue  # multiword range / empty node
            try:
                index = int(tok_id)
                head = int(cols[6])
            except ValueError as exc:
                raise ConlluParseError(line_no, f"non-numeric ID or HEAD: {exc}") from exc
            deprel = cols[7]
            deprel = deprel_map.get(deprel, deprel)
            tokens.append(
                Token(
                    index=index,
                    surface=cols[1],
                    lemma=cols[2],
                    upos=cols[3],
                    head=head,
                    deprel=deprel,
                    misc=_parse_misc(cols[9]),
                )
            )
    flush()
    return trees


def write_conllu(trees: Iterable[SentenceTree], path: str | Path) -> None:
    """Serialise trees back to CoNLL-U (round-trip test utility).

    Only the columns the :class:`Token` model carries are populated; the
    others are written as ``_``.
    """
    last_doc: str | None = None
    with open(path, "w", encoding="utf-8") as handle:
        for tree in trees:
            if tree.doc_id and tree.doc_id != last_doc:
                handle.write(f"# newdoc id = {tree.doc_id}\n")
                last_doc = tree.doc_id
            if tree.sent_id:
                handle.write(f"# sent_id = {tree.sent_id}\n")
            for tok in tree.tokens:
                handle.write(
                    "\t".join(
                        (
                            str(tok.index),
                            tok.surface,
                            tok.lemma,
                            tok.upos,
                            "_",
                            "_",
                            str(tok.head),
                            tok.deprel,
                            "_",
                            _format_misc(tok.misc),
                        )
                    )
                    + "\n"
                )
            handle.write("\n")


def iter_doc_groups(trees: Iterable[SentenceTree]) -> Iterator[tuple[str, list[SentenceTree]]]:
    """Group consecutive trees by doc_id, preserving document order."""
    group: list[SentenceTree] = []
    current: str | None = None
    for tree in trees:
        if current is None or tree.doc_id != current:
            if group:
                yield current or "", group
            current = tree.doc_id
            group = []
        group.append(tree)
    if group:
        yield current or "", group
