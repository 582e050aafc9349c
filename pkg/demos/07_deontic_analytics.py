"""Deontic analytics over tagged statements: object frequency contrasts
between the paper and policy corpora, normalised deontic share profiles with
ternary coordinates, and a word tree of pivot contexts.
"""

from pathlib import Path

from mair.conllu import read_conllu
from mair.deontics import deontic_profiles, object_frequencies, word_tree
from mair.ig import tag_corpus

FIXTURES = Path(__file__).parent / "fixtures"

trees = read_conllu(FIXTURES / "corpus.conllu")
labeled = [("policy" if t.doc_id.startswith("pol") else "papers", s)
           for s in tag_corpus(trees)
           for t in [next(tr for tr in trees if tr.doc_id == s.doc_id)]]

print("object frequencies (papers vs policy):")
for row in object_frequencies(labeled, min_count=0):
    print(f"  {row.object_lemma:15} papers={row.count_papers:2d} policy={row.count_policy:2d}")

non_negated = [(c, s) for c, s in labeled if not s.negated]
print("\ndeontic profiles, ternary coordinates (can, shall, must):")
for profile in deontic_profiles(non_negated, objects=("system", "decision", "explanation", "model")):
    tern = tuple(round(v, 3) for v in profile.ternary)
    print(f"  {profile.object_lemma:12} {profile.corpus:7} {tern}")

sentences = [[tok.surface for tok in tree.tokens] for tree in trees]
tree = word_tree(sentences, "must", direction="forward", max_depth=2)
print(f"\ncontexts after 'must' ({tree.root.count} occurrences):")
for token, node in sorted(tree.root.children.items()):
    following = ", ".join(f"{t} x{c.count}" for t, c in sorted(node.children.items()))
    print(f"  must {token} ({node.count})  ->  {following or '-'}")
