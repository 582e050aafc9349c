"""Drive a parser backend over raw text documents and emit CoNLL-U.

Input is a directory of ``.txt`` files (one document each; the file stem is
the document id) or explicit file paths.  Output is a single CoNLL-U file
with ``# newdoc id`` / ``# sent_id`` comments and a ``# parser`` provenance
comment, optionally with ``Coref=<chainId>`` MISC annotations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .coref import annotate_coref
from .rulegram import ParsedToken, RuleGrammar
from .spacy_backend import ModelUnavailableError, SpacyBackend

__all__ = ["AdapterConfig", "AdaptError", "adapt", "get_model"]

logger = logging.getLogger(__name__)


class AdaptError(RuntimeError):
    pass


@dataclass
class AdapterConfig:
    inputs: list[Path] = field(default_factory=list)
    output: Path = Path("corpus.conllu")
    model: str = "rule-en"
    enable_coref: bool = False


def get_model(name: str):
    if name == "rule-en":
        return RuleGrammar()
    if name.startswith("spacy:"):
        return SpacyBackend(name.split(":", 1)[1])
    raise ModelUnavailableError(
        f"unknown model {name!r}; use 'rule-en' or 'spacy:<model-name>'"
    )


def _input_documents(inputs: list[Path]) -> list[tuple[str, Path]]:
    docs: list[tuple[str, Path]] = []
    for path in inputs:
        if path.is_dir():
            docs.extend((p.stem, p) for p in sorted(path.glob("*.txt")))
        else:
            docs.append((path.stem, path))
    return docs


def _format_token(token: ParsedToken) -> str:
    misc = "|".join(f"{k}={v}" for k, v in token.misc.items()) or "_"
    return "\t".join(
        (
            str(token.index),
            token.surface,
            token.lemma,
            token.upos,
            "_",
            "_",
            str(token.head),
            token.deprel,
            "_",
            misc,
        )
    )


def adapt(config: AdapterConfig) -> dict:
    """Parse every input document into ``config.output``.

    Per-document parse failures are logged and skipped; the run fails only
    when every document fails.  Returns counts for reporting.
    """
    model = get_model(config.model)
    documents = _input_documents(config.inputs)
    parsed = 0
    failed = 0
    sentence_count = 0
    lines: list[str] = [f"# parser = {model.name} {getattr(model, 'version', '')}".rstrip()]
    for doc_id, path in documents:
        try:
            text = path.read_text(encoding="utf-8")
            doc_sentences = model.parse(text)
        except Exception:
            failed += 1
            logger.exception("failed to parse %s", path)
            continue
        if config.enable_coref:
            annotate_coref(doc_sentences)
        if doc_sentences:
            lines.append(f"# newdoc id = {doc_id}")
        for i, sentence in enumerate(doc_sentences, start=1):
            sentence_count += 1
            lines.append(f"# sent_id = {doc_id}-s{i}")
            lines.extend(_format_token(tok) for tok in sentence)
            lines.append("")
        parsed += 1
    if documents and parsed == 0:
        raise AdaptError(f"all {failed} document(s) failed to parse")
    config.output.parent.mkdir(parents=True, exist_ok=True)
    config.output.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return {"documents": parsed, "failed": failed, "sentences": sentence_count}
