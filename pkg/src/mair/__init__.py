"""Corpus mining toolkit for policy and research texts.

Capabilities: document ingestion and filtering over line-oriented dumps,
institutional-grammar statement extraction from dependency-parsed sentences,
affiliation extraction from LaTeX sources, policy-to-paper citation link
mining, citation-graph and bibliographic-coupling analytics, document
function classification, and a content-addressed stage pipeline.
"""

__version__ = "0.1.0"

from .corpus import CorpusFilter, Document, filter_corpus, ingest
from .conllu import SentenceTree, Token, children, read_conllu
from .ig import DeonticLexicon, IgStatement, extract_statement, find_deontic_sentences, tag_corpus
from .graphs import DocGraph, bibliographic_coupling, pagerank, pagerank_significance, threshold_sweep
from .linking import BipartiteGraph, PaperIndex, extract_links, graph_stats
from .store import RecordStore, StoreSet

__all__ = [
    "__version__",
    "CorpusFilter",
    "Document",
    "filter_corpus",
    "ingest",
    "SentenceTree",
    "Token",
    "children",
    "read_conllu",
    "DeonticLexicon",
    "IgStatement",
    "extract_statement",
    "find_deontic_sentences",
    "tag_corpus",
    "DocGraph",
    "bibliographic_coupling",
    "pagerank",
    "pagerank_significance",
    "threshold_sweep",
    "BipartiteGraph",
    "PaperIndex",
    "extract_links",
    "graph_stats",
    "RecordStore",
    "StoreSet",
]
