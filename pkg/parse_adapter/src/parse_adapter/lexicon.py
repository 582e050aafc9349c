"""Closed-class word lists and lemma rules for the bundled rule grammar."""

from __future__ import annotations

DETERMINERS = {
    "the", "a", "an", "any", "this", "that", "these", "those",
    "each", "every", "some", "all", "no", "such", "its", "their", "our",
}

MODALS = {
    "shall", "should", "must", "may", "can", "could", "might",
    "will", "would", "ought",
}

BE_FORMS = {"be", "is", "are", "was", "were", "been", "being", "am"}
HAVE_FORMS = {"have", "has", "had", "having"}
DO_FORMS = {"do", "does", "did"}

PRONOUNS = {
    "it", "they", "he", "she", "we", "you", "i",
    "them", "him", "her", "us", "me",
    "itself", "themselves", "who", "whoever", "which",
}

#: Pronouns that can head a coreference chain back to a nominal antecedent.
ANAPHORIC_PRONOUNS = {"it", "they", "he", "she", "them", "him", "her", "itself", "themselves"}

ADPOSITIONS = {
    "of", "in", "on", "at", "by", "for", "with", "from", "about",
    "under", "over", "into", "within", "without", "between", "against",
    "near", "through", "during", "after", "before", "across",
}

COORDINATORS = {"and", "or", "but", "nor"}
SUBORDINATORS = {"if", "when", "because", "while", "although", "unless", "whereas"}

ADVERBS = {
    "very", "also", "only", "often", "never", "always", "well",
    "here", "there", "now", "then", "soon", "too", "again",
}

NEGATION = {"not"}

#: Words that act as verbs in the supported clause positions.  The grammar
#: also trusts any word directly following a modal or auxiliary, so this
#: list only matters for bare present-tense verbs.
COMMON_VERBS = {
    "submit", "log", "retain", "impose", "produce", "document", "review",
    "audit", "provide", "inspect", "rank", "validate", "report", "publish",
    "enforce", "notify", "offer", "act", "register", "monitor", "appeal",
    "delete", "keep", "store", "explain", "assess", "train", "test",
    "evaluate", "disclose", "collect", "share", "use", "deploy", "operate",
    "supervise", "certify", "update", "describe", "record", "label",
    "inform", "verify", "protect", "limit", "restrict", "approve",
}

IRREGULAR_LEMMAS = {
    "is": "be", "are": "be", "was": "be", "were": "be", "been": "be",
    "being": "be", "am": "be",
    "has": "have", "had": "have", "having": "have",
    "does": "do", "did": "do", "done": "do",
    "kept": "keep", "made": "make", "held": "hold", "built": "build",
    "took": "take", "taken": "take", "given": "give", "gave": "give",
    "children": "child", "people": "people", "data": "data",
    "criteria": "criterion", "bodies": "body", "its": "its",
    "them": "they", "him": "he", "her": "she", "us": "we", "me": "i",
}

def lemma_noun(word: str) -> str:
    lowered = word.lower()
    if lowered in IRREGULAR_LEMMAS:
        return IRREGULAR_LEMMAS[lowered]
    if lowered.endswith("ies") and len(lowered) > 4:
        return lowered[:-3] + "y"
    if lowered.endswith(("sses", "shes", "ches", "xes", "zes")):
        return lowered[:-2]
    if lowered.endswith("ses") and len(lowered) > 4:
        return lowered[:-1]
    if lowered.endswith("s") and not lowered.endswith(("ss", "us", "is")):
        return lowered[:-1]
    return lowered


def _inflected_stem(suffixless: str) -> str:
    """Undo -ed/-ing stem changes, preferring known-verb readings."""
    if suffixless in COMMON_VERBS:
        return suffixless  # retained -> retain
    if suffixless + "e" in COMMON_VERBS:
        return suffixless + "e"  # produced -> produce
    if len(suffixless) > 2 and suffixless[-1] == suffixless[-2] and suffixless[-1] not in ("s", "l", "e"):
        return suffixless[:-1]  # logged -> log, submitted -> submit
    return suffixless


def lemma_verb(word: str) -> str:
    lowered = word.lower()
    if lowered in IRREGULAR_LEMMAS:
        return IRREGULAR_LEMMAS[lowered]
    if lowered.endswith("ied") and len(lowered) > 4:
        return lowered[:-3] + "y"
    if lowered.endswith("eed"):
        return lowered[:-1]
    if lowered.endswith("ed") and len(lowered) > 3:
        return _inflected_stem(lowered[:-2])
    if lowered.endswith("ing") and len(lowered) > 4:
        return _inflected_stem(lowered[:-3])
    if lowered.endswith("ies") and len(lowered) > 4:
        return lowered[:-3] + "y"
    if lowered.endswith(("ses", "shes", "ches", "xes")):
        return lowered[:-2]
    if lowered.endswith("s") and not lowered.endswith("ss"):
        return lowered[:-1]
    return lowered
