"""Institutional-grammar tagging of deontic sentences over dependency trees.

A sentence qualifies when it contains a modal from a closed deontic lexicon.
Starting from the modal's head verb, the extractor walks the tree collecting
the regulated action (Aim), its addressee (Attribute, the grammatical
subject) and the receiver of the action (Object, direct object or passive
subject), then expands coordinations and resolves pronoun subjects through a
coreference resolver.

The verb walk visits, besides the modal's head, every verb reachable along
``conj`` arcs from it: upward when the head is itself a conjunct of another
verb, and downward through conj children (the downward half is controlled by
``conj_descend``; without it, conjoined verbs to the right of the modal's
head are never reached).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Mapping, Protocol, Sequence

from .conllu import SentenceTree, Token, children, iter_doc_groups

__all__ = [
    "DEONTIC_CLASSES",
    "DEFAULT_DEONTIC_LEXICON",
    "DeonticLexicon",
    "IgPhrase",
    "IgStatement",
    "CorefResolver",
    "DocumentCoref",
    "load_lexicon",
    "find_deontic_sentences",
    "extract_statement",
    "tag_corpus",
]

logger = logging.getLogger(__name__)

DEONTIC_CLASSES = ("shall", "must", "can")

#: Modal surface form -> canonical deontic.  The closed list is configurable
#: (see :func:`load_lexicon`); this default groups the English modals by
#: strength: obligation-leaning forms map to "shall", strict necessity to
#: "must", permission/ability to "can".
DEFAULT_DEONTIC_LEXICON: Mapping[str, str] = {
    "shall": "shall",
    "should": "shall",
    "ought": "shall",
    "will": "shall",
    "must": "must",
    "need": "must",
    "may": "can",
    "can": "can",
    "could": "can",
    "might": "can",
    "would": "can",
}

#: Relations whose dependents belong to an extracted noun phrase.
_PHRASE_RELS = ("compound", "amod")

_VERB_POS = ("VERB", "AUX")


@dataclass(frozen=True)
class DeonticLexicon:
    """Closed map from modal surface forms (case-folded) to deontic classes."""

    entries: Mapping[str, str]

    def __post_init__(self) -> None:
        for surface, cls in self.entries.items():
            if cls not in DEONTIC_CLASSES:
                raise ValueError(f"deontic class for {surface!r} must be one of {DEONTIC_CLASSES}, got {cls!r}")
            if len(surface.split()) != 1:
                raise ValueError(f"lexicon keys are single tokens, got {surface!r}")

    def lookup(self, surface: str) -> str | None:
        return self.entries.get(surface.casefold())

    def __contains__(self, surface: str) -> bool:
        return surface.casefold() in self.entries


def load_lexicon(path: str | Path) -> DeonticLexicon:
    """Load a ``surface<TAB>class`` lexicon file, one mapping per line."""
    entries: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            surface, _, cls = line.partition("\t")
            entries[surface.strip().casefold()] = cls.strip()
    return DeonticLexicon(entries)


@dataclass(frozen=True)
class IgPhrase:
    """An extracted subject or object.

    ``lemma`` is the phrase head's lemma and serves as the analytic key;
    ``phrase`` joins the lemmas of the head plus its compound/amod dependents
    in surface order; ``surface`` keeps the original wording.
    """

    lemma: str
    phrase: str
    surface: str


@dataclass(frozen=True)
class IgStatement:
    """One tagged regulative statement."""

    doc_id: str
    sent_id: str
    deontic_surface: str
    deontic_class: str
    attributes: tuple[IgPhrase, ...]
    aims: tuple[str, ...]
    objects: tuple[IgPhrase, ...]
    negated: bool
    coref_resolved: tuple[bool, ...]  # parallel to attributes

    def to_record(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "sent_id": self.sent_id,
            "deontic_surface": self.deontic_surface,
            "deontic_class": self.deontic_class,
            "attributes": [vars(p).copy() for p in self.attributes],
            "aims": list(self.aims),
            "objects": [vars(p).copy() for p in self.objects],
            "negated": self.negated,
            "coref_resolved": list(self.coref_resolved),
        }

    @classmethod
    def from_record(cls, record: Mapping) -> "IgStatement":
        return cls(
            doc_id=record["doc_id"],
            sent_id=record["sent_id"],
            deontic_surface=record["deontic_surface"],
            deontic_class=record["deontic_class"],
            attributes=tuple(IgPhrase(**p) for p in record["attributes"]),
            aims=tuple(record["aims"]),
            objects=tuple(IgPhrase(**p) for p in record["objects"]),
            negated=record["negated"],
            coref_resolved=tuple(record["coref_resolved"]),
        )


class CorefResolver(Protocol):
    """Resolves a pronoun token to the phrase it refers to, or None."""

    def resolve(self, tree: SentenceTree, pronoun: Token) -> str | None: ...


class DocumentCoref:
    """Default coreference resolver over one document's sentence trees.

    Two strategies, in order: ``Coref=<chainId>`` MISC annotations (the
    chain's earliest non-pronoun mention in document order wins), then the
    positional heuristic "nearest preceding NOUN/PROPN subject in the same
    document".  Mentions are returned as the casefolded surface phrase
    ("providers", "agency"); None when neither strategy yields one.
    """

    def __init__(self, trees: Sequence[SentenceTree]) -> None:
        self._trees = list(trees)
        self._order = {id(t): i for i, t in enumerate(self._trees)}
        # chain id -> earliest non-pronoun mention phrase
        self._chains: dict[str, str] = {}
        for tree in self._trees:
            for tok in tree.tokens:
                chain = tok.misc_value("Coref")
                if chain and chain not in self._chains and tok.upos != "PRON":
                    self._chains[chain] = phrase_of(tree, tok).surface.casefold()

    def resolve(self, tree: SentenceTree, pronoun: Token) -> str | None:
        chain = pronoun.misc_value("Coref")
        if chain and chain in self._chains:
            return self._chains[chain]
        return self._preceding_subject(tree, pronoun)

    def _preceding_subject(self, tree: SentenceTree, pronoun: Token) -> str | None:
        pos = self._order.get(id(tree))
        if pos is None:  # equal tree passed by value rather than identity
            pos = next(
                (i for i, t in enumerate(self._trees) if t.sent_id == tree.sent_id and t.doc_id == tree.doc_id),
                None,
            )
            if pos is None:
                return None
        for sent_i in range(pos, -1, -1):
            candidate_tree = self._trees[sent_i]
            limit = pronoun.index if sent_i == pos else len(candidate_tree.tokens) + 1
            for tok in reversed(candidate_tree.tokens[: limit - 1]):
                if tok.deprel in ("nsubj", "nsubjpass") and tok.upos in ("NOUN", "PROPN"):
                    return phrase_of(candidate_tree, tok).surface.casefold()
        return None


def phrase_of(tree: SentenceTree, head: Token) -> IgPhrase:
    """Build the phrase around a subject/object head.

    Gathers the head plus its compound and amod dependents (transitively, so
    compound chains are kept whole) and joins their lemmas in surface order.
    """
    members = {head.index: head}
    stack = [head]
    while stack:
        tok = stack.pop()
        for rel in _PHRASE_RELS:
            for child in children(tree, tok, rel):
                if child.index not in members:
                    members[child.index] = child
                    stack.append(child)
    ordered = [members[i] for i in sorted(members)]
    return IgPhrase(
        lemma=head.lemma.casefold(),
        phrase=" ".join(t.lemma.casefold() for t in ordered),
        surface=" ".join(t.surface for t in ordered),
    )


def find_deontic_sentences(
    trees: Iterable[SentenceTree], lexicon: DeonticLexicon
) -> list[tuple[SentenceTree, Token]]:
    """All (tree, modal token) pairs; a sentence with two modals yields two.

    Matching is case-insensitive on the surface form against lexicon keys.
    """
    pairs: list[tuple[SentenceTree, Token]] = []
    for tree in trees:
        for tok in tree.tokens:
            if tok.surface in lexicon:
                pairs.append((tree, tok))
    return pairs


def _collect_verb(
    tree: SentenceTree,
    verb: Token,
    aims: list[Token],
    attributes: list[Token],
    objects: list[Token],
) -> None:
    aims.append(verb)
    new_subj = children(tree, verb, "nsubj")
    new_passive = children(tree, verb, "nsubjpass")
    if not new_subj and not new_passive:
        # Clausal-subject branch: the subsentence under a csubj child lends
        # its own subject tokens as attributes.
        for clause in children(tree, verb, "csubj"):
            for child in children(tree, clause):
                if child.deprel in ("nsubj", "nsubjpass"):
                    attributes.append(child)
    attributes.extend(new_subj)
    objects.extend(new_passive)
    objects.extend(children(tree, verb, "dobj"))


def _conj_closure(tree: SentenceTree, heads: list[Token]) -> list[Token]:
    """Heads plus, transitively, their conj children, in discovery order.

    The post-pass that expands coordinated subjects has two defensible
    readings: re-append the subject when the subject list's parent is a
    conjunct (not well-typed, a list has no parent), or expand each found
    subject with its conj-linked siblings.  The sibling expansion is
    implemented; it is also what makes "designers, builders and
    manufacturers" yield three addressees.
    """
    out: list[Token] = []
    seen: set[int] = set()
    queue = list(heads)
    while queue:
        tok = queue.pop(0)
        if tok.index in seen:
            continue
        seen.add(tok.index)
        out.append(tok)
        queue.extend(children(tree, tok, "conj"))
    return out


def _is_negated(tree: SentenceTree, aims: Sequence[Token]) -> bool:
    for verb in aims:
        for child in children(tree, verb):
            if child.deprel == "neg":
                return True
            if child.deprel == "advmod" and child.lemma.casefold() == "not":
                return True
    return False


def extract_statement(
    tree: SentenceTree,
    deontic: Token,
    lexicon: DeonticLexicon,
    coref: CorefResolver | None = None,
    conj_descend: bool = True,
) -> IgStatement | None:
    """Extract the statement governed by one modal token.

    Returns None when no Aim can be located, i.e. the modal's head is not a
    verb and no conj chain from it reaches one.  A statement always has at
    least one Aim.

    ``conj_descend`` additionally walks conj verb children of each visited
    verb; the upward-only walk cannot reach conjoined verbs that follow the
    modal's head ("logged and retained" style coordinations).
    """
    deontic_class = lexicon.lookup(deontic.surface)
    if deontic_class is None:
        raise ValueError(f"token {deontic.surface!r} is not in the deontic lexicon")

    aims: list[Token] = []
    attr_tokens: list[Token] = []
    obj_tokens: list[Token] = []

    visited: set[int] = set()
    current = tree.parent(deontic)
    while current is not None and current.index not in visited:
        visited.add(current.index)
        if current.upos in _VERB_POS:
            _collect_verb(tree, current, aims, attr_tokens, obj_tokens)
        parent = tree.parent(current)
        if current.deprel == "conj" and parent is not None and parent.upos == "VERB":
            current = parent
        else:
            current = None

    if conj_descend:
        queue = [tree.token(i) for i in sorted(visited)]
        while queue:
            verb = queue.pop(0)
            for child in children(tree, verb, "conj"):
                if child.upos in _VERB_POS and child.index not in visited:
                    visited.add(child.index)
                    _collect_verb(tree, child, aims, attr_tokens, obj_tokens)
                    queue.append(child)

    if not aims:
        return None

    attr_tokens = _conj_closure(tree, attr_tokens)
    obj_tokens = _conj_closure(tree, obj_tokens)

    attributes: list[IgPhrase] = []
    resolved_flags: list[bool] = []
    for tok in attr_tokens:
        phrase = phrase_of(tree, tok)
        resolved = False
        if tok.upos == "PRON" and coref is not None:
            try:
                mention = coref.resolve(tree, tok)
            except Exception:  # resolver failure keeps the pronoun surface
                logger.warning("coreference resolver failed on %r (%s)", tok.surface, tree.sent_id)
                mention = None
            if mention is not None:
                phrase = replace(phrase, lemma=mention.split()[-1], phrase=mention)
                resolved = True
        attributes.append(phrase)
        resolved_flags.append(resolved)

    objects = [phrase_of(tree, tok) for tok in obj_tokens]

    return IgStatement(
        doc_id=tree.doc_id,
        sent_id=tree.sent_id,
        deontic_surface=deontic.surface,
        deontic_class=deontic_class,
        attributes=tuple(attributes),
        aims=tuple(t.lemma.casefold() for t in aims),
        objects=tuple(objects),
        negated=_is_negated(tree, aims),
        coref_resolved=tuple(resolved_flags),
    )


def tag_corpus(
    trees: Sequence[SentenceTree],
    lexicon: DeonticLexicon | None = None,
    coref_factory: Callable[[Sequence[SentenceTree]], CorefResolver] | None = DocumentCoref,
    conj_descend: bool = True,
) -> list[IgStatement]:
    """Tag every deontic sentence of a corpus, document order preserved.

    ``trees`` must be grouped by doc_id (as produced by the reader).  A fresh
    coreference resolver is built per document via ``coref_factory``.
    Per-sentence failures are logged and skipped, never fatal.
    """
    lexicon = lexicon or DeonticLexicon(DEFAULT_DEONTIC_LEXICON)
    statements: list[IgStatement] = []
    for _, doc_trees in iter_doc_groups(trees):
        resolver = coref_factory(doc_trees) if coref_factory is not None else None
        for tree, deontic in find_deontic_sentences(doc_trees, lexicon):
            try:
                statement = extract_statement(tree, deontic, lexicon, resolver, conj_descend)
            except Exception:
                logger.exception("tagging failed for sentence %s", tree.sent_id)
                continue
            if statement is not None:
                statements.append(statement)
    return statements
