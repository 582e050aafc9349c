from pathlib import Path
import pytest
from hypothesis import given, strategies as st

from mair.conllu import (
    SentenceTree,
    Token,
    TreeValidationError,
    ConlluParseError,
    children,
    read_conllu,
    write_conllu,
)

FIXTURES = Path(__file__).parent / "fixtures"


def test_read_two_sentence_file():
    trees = read_conllu(FIXTURES / "modal_examples.conllu")
    assert len(trees) == 2
    assert [t.sent_id for t in trees] == ["ex1", "ex2"]
    assert all(t.doc_id == "policy-001" for t in trees)


def test_cycle_is_rejected(tmp_path):
    bad = tmp_path / "cycle.conllu"
    bad.write_text(
        "# sent_id = c1\n"
        "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tNOUN\t_\t_\t3\tdep\t_\t_\n"
        "3\tc\tc\tNOUN\t_\t_\t2\tdep\t_\t_\n\n",
        encoding="utf-8",
    )
    with pytest.raises(TreeValidationError) as err:
        read_conllu(bad)
    assert err.value.sent_id == "c1"


def test_multiple_roots_rejected(tmp_path):
    bad = tmp_path / "roots.conllu"
    bad.write_text(
        "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n\n",
        encoding="utf-8",
    )
    with pytest.raises(TreeValidationError):
        read_conllu(bad)


def test_malformed_column_count_names_line(tmp_path):
    bad = tmp_path / "cols.conllu"
    bad.write_text("1\ta\ta\tNOUN\t0\troot\n", encoding="utf-8")
    with pytest.raises(ConlluParseError) as err:
        read_conllu(bad)
    assert err.value.line_no == 1


def test_multiword_ranges_and_empty_nodes_skipped(tmp_path):
    f = tmp_path / "mwt.conllu"
    f.write_text(
        "1-2\tcannot\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tcan\tcan\tAUX\t_\t_\t2\taux\t_\t_\n"
        "2\tnot\tnot\tPART\t_\t_\t0\troot\t_\t_\n"
        "2.1\televen\televen\tNUM\t_\t_\t_\t_\t_\t_\n\n",
        encoding="utf-8",
    )
    (tree,) = read_conllu(f)
    assert [t.surface for t in tree.tokens] == ["can", "not"]


def test_ud_v2_labels_normalised(tmp_path):
    f = tmp_path / "v2.conllu"
    f.write_text(
        "1\tdata\tdata\tNOUN\t_\t_\t3\tnsubj:pass\t_\t_\n"
        "2\tis\tbe\tAUX\t_\t_\t3\taux\t_\t_\n"
        "3\tkept\tkeep\tVERB\t_\t_\t0\troot\t_\t_\n"
        "4\tlogs\tlog\tNOUN\t_\t_\t3\tobj\t_\t_\n\n",
        encoding="utf-8",
    )
    (tree,) = read_conllu(f)
    assert tree.token(1).deprel == "nsubjpass"
    assert tree.token(4).deprel == "dobj"


def test_fig_root_and_arcs():
    tree = read_conllu(FIXTURES / "modal_examples.conllu")[0]
    root = tree.root
    assert root.surface == "submit"
    assert [t.surface for t in children(tree, root, "nsubj")] == ["Designers"]
    assert [t.surface for t in children(tree, root, "dobj")] == ["details"]
    designers = tree.token(1)
    assert [t.surface for t in children(tree, designers, "conj")] == ["builders", "manufacturers"]


def test_children_leaf_and_wildcard():
    tree = read_conllu(FIXTURES / "modal_examples.conllu")[0]
    leaf = tree.token(6)  # "should"
    assert children(tree, leaf) == []
    for tok in tree.tokens:
        assert all(c.head == tok.index for c in children(tree, tok))


def test_children_count_sums_to_n_minus_one():
    for tree in read_conllu(FIXTURES / "golden_corpus.conllu"):
        total = sum(len(children(tree, tok)) for tok in tree.tokens)
        assert total == len(tree.tokens) - 1


@st.composite
def random_trees(draw):
    n = draw(st.integers(min_value=1, max_value=12))
    # random parent assignment guaranteeing a single rooted tree
    heads = [0]
    for i in range(2, n + 1):
        heads.append(draw(st.integers(min_value=1, max_value=i - 1)))
    order = draw(st.permutations(list(range(1, n + 1))))
    remap = {old: new for new, old in enumerate(order, start=1)}
    tokens = [None] * n
    upos = draw(st.lists(st.sampled_from(["NOUN", "VERB", "ADJ", "PRON"]), min_size=n, max_size=n))
    for old_index, head in zip(range(1, n + 1), heads):
        new_index = remap[old_index]
        new_head = 0 if head == 0 else remap[head]
        tokens[new_index - 1] = Token(
            index=new_index,
            surface=f"w{new_index}",
            lemma=f"l{new_index}",
            upos=upos[new_index - 1],
            head=new_head,
            deprel="root" if new_head == 0 else "dep",
            misc={"K": "v"} if draw(st.booleans()) else {},
        )
    return SentenceTree(tuple(tokens), sent_id=f"r{n}", doc_id="randdoc").validate()


@given(st.lists(random_trees(), min_size=1, max_size=5))
def test_write_read_round_trip(tmp_path_factory, trees):
    path = tmp_path_factory.mktemp("rt") / "trees.conllu"
    # unique sent ids so comparison is positional
    trees = [SentenceTree(t.tokens, sent_id=f"s{i}", doc_id=t.doc_id) for i, t in enumerate(trees)]
    write_conllu(trees, path)
    back = read_conllu(path)
    assert back == trees
