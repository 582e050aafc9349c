"""Pronoun coreference chain annotation over parsed documents.

Applies the nearest-preceding-nominal-subject heuristic within one
document: each anaphoric pronoun is chained to the closest earlier NOUN or
PROPN subject.  Chains are recorded as ``Coref=<chainId>`` MISC values on
every member token, and by construction every chain contains the non-pronoun
antecedent that seeded it.
"""

from __future__ import annotations

from .lexicon import ANAPHORIC_PRONOUNS
from .rulegram import ParsedToken

__all__ = ["annotate_coref"]

_SUBJECT_RELS = ("nsubj", "nsubjpass")


def annotate_coref(doc_sentences: list[list[ParsedToken]]) -> int:
    """Annotate chains in place; returns the number of chains created."""
    chains = 0
    antecedent_chain: dict[tuple[int, int], str] = {}
    for sent_i, sentence in enumerate(doc_sentences):
        for token in sentence:
            if token.upos != "PRON" or token.surface.lower() not in ANAPHORIC_PRONOUNS:
                continue
            found = _nearest_subject(doc_sentences, sent_i, token.index)
            if found is None:
                continue
            ant_pos, antecedent = found
            chain = antecedent_chain.get(ant_pos)
            if chain is None:
                chains += 1
                chain = f"c{chains}"
                antecedent_chain[ant_pos] = chain
                antecedent.misc["Coref"] = chain
            token.misc["Coref"] = chain
    return chains


def _nearest_subject(
    doc_sentences: list[list[ParsedToken]], sent_i: int, token_index: int
) -> tuple[tuple[int, int], ParsedToken] | None:
    for i in range(sent_i, -1, -1):
        sentence = doc_sentences[i]
        limit = token_index - 1 if i == sent_i else len(sentence)
        for token in reversed(sentence[:limit]):
            if token.deprel in _SUBJECT_RELS and token.upos in ("NOUN", "PROPN"):
                return (i, token.index), token
    return None
