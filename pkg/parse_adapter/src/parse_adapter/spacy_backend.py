"""Optional spaCy-driven parser backend.

Used when a model identifier of the form ``spacy:<model>`` is requested and
the spaCy runtime plus the named model are installed locally.  Raises an
actionable error naming the model otherwise.
"""

from __future__ import annotations

from .rulegram import ParsedToken

__all__ = ["SpacyBackend", "ModelUnavailableError"]


class ModelUnavailableError(RuntimeError):
    pass


class SpacyBackend:
    def __init__(self, model: str) -> None:
        try:
            import spacy
        except ImportError as exc:
            raise ModelUnavailableError(
                f"spaCy is not installed; install spacy and the model {model!r} "
                f"(python -m spacy download {model}) or use the bundled 'rule-en' grammar"
            ) from exc
        try:
            self._nlp = spacy.load(model)
        except OSError as exc:
            raise ModelUnavailableError(
                f"spaCy model {model!r} is not available locally; "
                f"run: python -m spacy download {model}"
            ) from exc
        self.name = f"spacy:{model}"
        self.version = getattr(self._nlp.meta, "get", lambda *_: "unknown")("version", "unknown")

    def parse(self, text: str) -> list[list[ParsedToken]]:
        doc = self._nlp(text)
        sentences: list[list[ParsedToken]] = []
        for sent in doc.sents:
            offset = sent.start
            tokens = []
            for tok in sent:
                head = 0 if tok.head is tok else tok.head.i - offset + 1
                tokens.append(
                    ParsedToken(
                        index=tok.i - offset + 1,
                        surface=tok.text,
                        lemma=tok.lemma_ or tok.text.lower(),
                        upos=tok.pos_,
                        head=head,
                        deprel="root" if head == 0 else tok.dep_,
                    )
                )
            sentences.append(tokens)
        return sentences
