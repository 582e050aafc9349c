"""Bundled deterministic English grammar.

A compact rule-based tokenizer, tagger, lemmatizer, and dependency parser
covering the clause shapes the toolkit's fixtures use: subject-verb-object
main clauses with modal and be/have auxiliaries, passives, negation, noun
and verb coordination, coordinated full clauses, prepositional phrases, and
simple copular sentences.  Output labels follow the inventory the consumer
normalises to (nsubj, nsubjpass, csubj, dobj, conj, aux, auxpass, det,
amod, compound, prep, pobj, neg, advmod, cc, punct, cop, dep).

The grammar is intentionally small and completely deterministic; a real
statistical parser can be mounted instead (see the spacy backend).  Output
is always a valid single-rooted tree: anything the rules cannot place
attaches to the root with the ``dep`` relation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import lexicon as lex

__all__ = ["ParsedToken", "RuleGrammar"]

_TOKEN = re.compile(r"[A-Za-z][A-Za-z'\-]*|\d+(?:\.\d+)?|[^\sA-Za-z\d]")
_SENTENCE_END = re.compile(r"(?<=[.!?])\s+")

_NOMINAL = ("NOUN", "PROPN", "PRON")
_NP_INNER = ("DET", "ADJ", "NOUN", "PROPN", "PRON", "NUM")


@dataclass
class ParsedToken:
    index: int
    surface: str
    lemma: str
    upos: str
    head: int = 0
    deprel: str = "dep"
    misc: dict = field(default_factory=dict)


class RuleGrammar:
    """Deterministic parser; one instance is reusable and stateless."""

    name = "rule-en"
    version = "1.0"

    def sentences(self, text: str) -> list[str]:
        parts = [p.strip() for p in _SENTENCE_END.split(text.strip())]
        return [p for p in parts if p]

    def parse(self, text: str) -> list[list[ParsedToken]]:
        return [self._parse_sentence(s) for s in self.sentences(text)]

    # -- tagging -----------------------------------------------------------

    def _tag(self, words: list[str]) -> list[str]:
        tags: list[str] = []
        for i, word in enumerate(words):
            lowered = word.lower()
            prev = tags[-1] if tags else None
            if not word[0].isalnum():
                tags.append("PUNCT")
            elif word[0].isdigit():
                tags.append("NUM")
            elif lowered in lex.NEGATION:
                tags.append("PART")
            elif lowered in lex.MODALS or lowered in lex.BE_FORMS or lowered in lex.HAVE_FORMS or lowered in lex.DO_FORMS:
                tags.append("AUX")
            elif lowered in lex.DETERMINERS:
                tags.append("DET")
            elif lowered in lex.PRONOUNS:
                tags.append("PRON")
            elif lowered in lex.ADPOSITIONS:
                tags.append("ADP")
            elif lowered in lex.COORDINATORS:
                tags.append("CCONJ")
            elif lowered in lex.SUBORDINATORS:
                tags.append("SCONJ")
            elif lowered in lex.ADVERBS or (lowered.endswith("ly") and len(lowered) > 3):
                tags.append("ADV")
            elif prev in ("AUX", "PART") and self._is_verbish(lowered):
                tags.append("VERB")
            elif lowered in lex.COMMON_VERBS and prev not in ("DET", "ADJ", "NUM", "ADP"):
                tags.append("VERB")
            elif (
                lowered.endswith(("ed", "en"))
                and lex.lemma_verb(lowered) in lex.COMMON_VERBS
                and prev not in ("DET", "ADJ", "NUM")
            ):
                tags.append("VERB")  # participle of a known verb (retained, logged)
            elif lowered.endswith(("tion", "tions", "ment", "ments", "ness", "ity", "ance", "ence", "sion", "sions")):
                tags.append("NOUN")
            elif lowered.endswith(("ous", "ful", "ive", "al", "able", "ible", "ic", "ated")):
                tags.append("ADJ")
            elif i > 0 and word[0].isupper():
                tags.append("PROPN")
            else:
                tags.append("NOUN")
        return tags

    @staticmethod
    def _is_verbish(lowered: str) -> bool:
        return (
            lowered in lex.COMMON_VERBS
            or lowered.endswith(("ed", "en", "ing", "ify", "ise", "ize", "ate"))
            or lex.lemma_verb(lowered) in lex.COMMON_VERBS
        )

    def _lemma(self, word: str, tag: str) -> str:
        lowered = word.lower()
        if tag == "VERB":
            return lex.lemma_verb(lowered)
        if tag in ("NOUN", "PROPN"):
            return lex.lemma_noun(lowered)
        if tag == "PRON":
            return lex.IRREGULAR_LEMMAS.get(lowered, lowered)
        if tag == "AUX":
            return lex.IRREGULAR_LEMMAS.get(lowered, lowered)
        return lowered

    # -- parsing -----------------------------------------------------------

    def _parse_sentence(self, sentence: str) -> list[ParsedToken]:
        words = _TOKEN.findall(sentence)
        if not words:
            words = ["."]
        tags = self._tag(words)
        tokens = [
            ParsedToken(index=i + 1, surface=w, lemma=self._lemma(w, t), upos=t)
            for i, (w, t) in enumerate(zip(words, tags))
        ]
        self._attach(tokens)
        return tokens

    def _attach(self, tokens: list[ParsedToken]) -> None:
        clauses = self._split_clauses(tokens)
        root_index = 0
        for start, end, cc_index in clauses:
            clause_root = self._attach_clause(tokens, start, end)
            if clause_root == 0:
                continue
            if root_index == 0:
                root_index = clause_root
                tokens[clause_root - 1].head = 0
                tokens[clause_root - 1].deprel = "root"
            else:
                tokens[clause_root - 1].head = root_index
                tokens[clause_root - 1].deprel = "conj"
            if cc_index:
                tokens[cc_index - 1].head = clause_root
                tokens[cc_index - 1].deprel = "cc"
        if root_index == 0:
            # no verb anywhere: first nominal (or first token) becomes root
            heads = [t for t in tokens if t.upos in _NOMINAL] or tokens
            root_index = heads[0].index
            tokens[root_index - 1].head = 0
            tokens[root_index - 1].deprel = "root"
        for token in tokens:
            if token.index != root_index and token.head == 0:
                token.head = root_index
                if token.deprel in ("dep", "root"):
                    token.deprel = "punct" if token.upos == "PUNCT" else "dep"

    def _split_clauses(self, tokens: list[ParsedToken]) -> list[tuple[int, int, int]]:
        """(start, end, cc_index) spans, 0-based half-open over tokens."""
        boundaries: list[tuple[int, int]] = []  # (cc position, clause start)
        seen_verb = False
        for i, token in enumerate(tokens):
            if token.upos in ("VERB", "AUX"):
                seen_verb = True
            if token.upos == "CCONJ" and seen_verb and self._clause_follows(tokens, i):
                boundaries.append((i, i + 1))
                seen_verb = False
        spans: list[tuple[int, int, int]] = []
        start = 0
        cc_index = 0
        for cc_pos, clause_start in boundaries:
            spans.append((start, cc_pos, cc_index))
            start = clause_start
            cc_index = cc_pos + 1  # 1-based token index of the coordinator
        spans.append((start, len(tokens), cc_index))
        return spans

    @staticmethod
    def _clause_follows(tokens: list[ParsedToken], cc_pos: int) -> bool:
        """A new clause needs nominal material and then an AUX before any verb."""
        saw_nominal = False
        for token in tokens[cc_pos + 1 :]:
            if token.upos in _NOMINAL:
                saw_nominal = True
            elif token.upos == "AUX":
                return saw_nominal
            elif token.upos == "VERB":
                return False
            elif token.upos == "PUNCT":
                return False
        return False

    def _attach_clause(self, tokens: list[ParsedToken], start: int, end: int) -> int:
        chain_start, chain_end, main = self._find_verb_chain(tokens, start, end)
        if main == 0:
            return self._attach_copula(tokens, start, end)

        main_token = tokens[main - 1]
        passive = False
        participle = main_token.surface.lower().endswith(("ed", "en"))
        for i in range(chain_start, chain_end):
            token = tokens[i]
            if token.index == main:
                continue
            token.head = main
            lowered = token.surface.lower()
            if lowered in lex.NEGATION:
                token.deprel = "neg"
            elif lowered in lex.BE_FORMS and participle:
                token.deprel = "auxpass"
                passive = True
            elif token.upos == "ADV":
                token.deprel = "advmod"
            else:
                token.deprel = "aux"

        subject = self._attach_np_run(tokens, start, chain_start, head_index=main,
                                      relation="nsubjpass" if passive else "nsubj")
        self._attach_postverbal(tokens, chain_end, end, main)

        # anything left inside the clause hangs off the main verb
        for i in range(start, end):
            token = tokens[i]
            if token.head == 0 and token.index != main:
                token.head = main
                token.deprel = "punct" if token.upos == "PUNCT" else "dep"
        return main

    def _find_verb_chain(self, tokens: list[ParsedToken], start: int, end: int) -> tuple[int, int, int]:
        """(chain start, chain end, main verb index); main 0 when verbless."""
        i = start
        while i < end:
            if tokens[i].upos in ("AUX", "VERB"):
                j = i
                main = 0
                while j < end and tokens[j].upos in ("AUX", "VERB", "PART", "ADV"):
                    if tokens[j].upos == "VERB":
                        main = tokens[j].index
                    j += 1
                if main:
                    return i, j, main
                if tokens[i].upos == "AUX":
                    return i, j, 0  # copular chain
            i += 1
        return start, start, 0

    def _attach_copula(self, tokens: list[ParsedToken], start: int, end: int) -> int:
        """be + ADJ/NP predicate: the predicate heads the clause."""
        chain_start, chain_end, _ = self._find_verb_chain(tokens, start, end)
        predicate = 0
        for i in range(chain_end, end):
            if tokens[i].upos in ("ADJ", "NOUN", "PROPN", "NUM"):
                predicate = self._np_head(tokens, chain_end, end) or tokens[i].index
                break
        if predicate == 0:
            return 0
        for i in range(chain_start, chain_end):
            token = tokens[i]
            token.head = predicate
            lowered = token.surface.lower()
            if lowered in lex.NEGATION:
                token.deprel = "neg"
            elif lowered in lex.MODALS:
                token.deprel = "aux"
            else:
                token.deprel = "cop"
        self._attach_np_run(tokens, start, chain_start, head_index=predicate, relation="nsubj")
        self._attach_np_internals(tokens, chain_end, end, self._np_span(tokens, chain_end, end))
        return predicate

    # -- noun phrases ------------------------------------------------------

    def _np_span(self, tokens: list[ParsedToken], start: int, end: int) -> tuple[int, int]:
        """First maximal [DET|ADJ|NOUN|PROPN|PRON|NUM]+ run in [start, end)."""
        i = start
        while i < end and tokens[i].upos not in _NP_INNER:
            i += 1
        j = i
        while j < end and tokens[j].upos in _NP_INNER:
            j += 1
        return i, j

    def _np_head(self, tokens: list[ParsedToken], start: int, end: int) -> int:
        i, j = self._np_span(tokens, start, end)
        for k in range(j - 1, i - 1, -1):
            if tokens[k].upos in _NOMINAL:
                return tokens[k].index
        return tokens[j - 1].index if j > i else 0

    def _attach_np_internals(self, tokens: list[ParsedToken], start: int, end: int,
                             span: tuple[int, int] | None = None) -> int:
        i, j = span if span is not None else self._np_span(tokens, start, end)
        if i >= j:
            return 0
        head = self._np_head(tokens, i, j)
        for k in range(i, j):
            token = tokens[k]
            if token.index == head:
                continue
            token.head = head
            if token.upos == "DET":
                token.deprel = "det"
            elif token.upos == "ADJ":
                token.deprel = "amod"
            elif token.upos == "NUM":
                token.deprel = "nummod"
            else:
                token.deprel = "compound"
        return head

    def _attach_np_run(self, tokens: list[ParsedToken], start: int, end: int,
                       head_index: int, relation: str) -> int:
        """Attach coordinated NPs in [start, end): first head gets
        ``relation``, later heads become conj of the first."""
        first = 0
        i = start
        while i < end:
            span = self._np_span(tokens, i, end)
            if span[0] >= span[1]:
                break
            head = self._attach_np_internals(tokens, i, end, span)
            if first == 0:
                first = head
                tokens[head - 1].head = head_index
                tokens[head - 1].deprel = relation
            else:
                tokens[head - 1].head = first
                tokens[head - 1].deprel = "conj"
            i = span[1]
            # walk over separators; cc attaches to the conjunct that follows
            while i < end and tokens[i].upos in ("PUNCT", "CCONJ"):
                if tokens[i].upos == "CCONJ":
                    nxt = self._np_span(tokens, i + 1, end)
                    if nxt[0] < nxt[1]:
                        tokens[i].head = self._np_head(tokens, nxt[0], nxt[1])
                        tokens[i].deprel = "cc"
                i += 1
        return first

    def _attach_postverbal(self, tokens: list[ParsedToken], start: int, end: int, verb: int) -> None:
        current_verb = verb
        dobj_head = 0
        i = start
        while i < end:
            token = tokens[i]
            if token.upos == "ADP":
                token.head = current_verb
                token.deprel = "prep"
                span = self._np_span(tokens, i + 1, end)
                if span[0] < span[1]:
                    pobj = self._attach_np_internals(tokens, i + 1, end, span)
                    tokens[pobj - 1].head = token.index
                    tokens[pobj - 1].deprel = "pobj"
                    i = span[1]
                    continue
                i += 1
            elif token.upos in _NP_INNER:
                span = self._np_span(tokens, i, end)
                head = self._attach_np_internals(tokens, i, end, span)
                if dobj_head == 0:
                    tokens[head - 1].head = current_verb
                    tokens[head - 1].deprel = "dobj"
                    dobj_head = head
                else:
                    tokens[head - 1].head = dobj_head
                    tokens[head - 1].deprel = "conj"
                i = span[1]
            elif token.upos == "CCONJ":
                nxt = i + 1
                if nxt < end and tokens[nxt].upos == "VERB":
                    tokens[nxt].head = verb
                    tokens[nxt].deprel = "conj"
                    token.head = tokens[nxt].index
                    token.deprel = "cc"
                    current_verb = tokens[nxt].index
                    dobj_head = 0
                    i += 2
                    continue
                nxt_np = self._np_span(tokens, i + 1, end)
                if nxt_np[0] < nxt_np[1]:
                    token.head = self._np_head(tokens, nxt_np[0], nxt_np[1])
                    token.deprel = "cc"
                i += 1
            elif token.upos == "PART" and token.surface.lower() in lex.NEGATION:
                token.head = current_verb
                token.deprel = "neg"
                i += 1
            elif token.upos == "ADV":
                token.head = current_verb
                token.deprel = "advmod"
                i += 1
            elif token.upos == "PUNCT":
                token.head = verb
                token.deprel = "punct"
                i += 1
            else:
                i += 1
