"""Convert raw document text into CoNLL-U dependency parses for the toolkit.

The adapter is a standalone command (``mair-parse``) communicating with the
analysis package only through files.  It drives a pluggable parser backend:
the bundled deterministic rule grammar (``rule-en``) or a locally installed
spaCy model (``spacy:<name>``), and can annotate pronoun coreference chains.
"""

__version__ = "0.1.0"

from .adapt import AdapterConfig, adapt, get_model
from .rulegram import ParsedToken, RuleGrammar

__all__ = ["__version__", "AdapterConfig", "adapt", "get_model", "ParsedToken", "RuleGrammar"]
