"""Extract institutional-grammar statements from parsed deontic sentences.

Every sentence containing a modal from the closed deontic lexicon yields one
statement per modal: the regulated action (Aim), its addressee (Attribute),
and the receiver (Object), with coordinations expanded and pronoun subjects
resolved against the document context.
"""

from pathlib import Path

from mair.conllu import read_conllu
from mair.ig import tag_corpus

FIXTURES = Path(__file__).parent / "fixtures"

trees = read_conllu(FIXTURES / "corpus.conllu")
print(f"{len(trees)} parsed sentences")

for statement in tag_corpus(trees):
    attrs = ", ".join(a.phrase for a in statement.attributes) or "-"
    objs = ", ".join(o.lemma for o in statement.objects) or "-"
    neg = " [negated]" if statement.negated else ""
    print(
        f"{statement.doc_id:12} {statement.deontic_surface:7}-> {statement.deontic_class:5} "
        f"aims={'/'.join(statement.aims):20} A=({attrs}) B=({objs}){neg}"
    )
