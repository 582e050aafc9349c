"""Command-line interface: one subcommand per toolkit capability plus the
pipeline runner (``run`` / ``status``).

Global flags: ``--store-dir`` locates the three record stores, ``--seed``
fixes stochastic analyses, ``--offline`` forbids network lookups.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import affiliations as aff
from . import corpus as corpus_mod
from . import deontics, functions, graphs, linking
from . import ig as ig_mod
from . import pipeline as pipeline_mod
from .conllu import read_conllu
from .store import StoreSet

__all__ = ["main", "dispatch"]


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--store-dir", default="stores", help="directory holding the record stores")
    parser.add_argument("--seed", type=int, default=0, help="seed for stochastic analyses")
    parser.add_argument("--offline", action="store_true", help="forbid network lookups")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mair", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="ingest document dumps into the documents store")
    p.add_argument("--dump", action="append", required=True, help="dump file (repeatable)")
    p.add_argument("--source", choices=corpus_mod.SOURCES, help="default source for records that omit one")
    p.add_argument("--filter-category", action="append", default=[], help="keep matching categories")
    p.add_argument("--filter-keyword", action="append", default=[], help="keep matching keywords")
    _add_common(p)

    p = sub.add_parser("tag-ig", help="extract institutional-grammar statements")
    p.add_argument("--conllu", required=True, help="dependency-parsed corpus (CoNLL-U)")
    p.add_argument("--deontic-lexicon", help="surface<TAB>class lexicon file")
    p.add_argument("--no-conj-descend", action="store_true", help="skip conj verb children of the modal's head")
    _add_common(p)

    p = sub.add_parser("extract-affiliations", help="extract affiliations from paper LaTeX sources")
    p.add_argument("--alias-table", required=True, help="canonical | aliases | domains | sector file")
    p.add_argument("--kb-url", help="knowledge-base lookup endpoint")
    p.add_argument("--kb-cache", default="kb-cache", help="response cache directory")
    p.add_argument("--rebuild", action="store_true", help="rewrite the documents store instead of appending versions")
    _add_common(p)

    p = sub.add_parser("link", help="mine policy -> paper citation links")
    p.add_argument("--min-title-len", type=int, default=linking.DEFAULT_MIN_TITLE_LEN)
    p.add_argument("--author-window", type=int, default=linking.DEFAULT_AUTHOR_WINDOW)
    _add_common(p)

    p = sub.add_parser("graph", help="citation-graph and coupling analyses")
    p.add_argument("action", choices=["build", "pagerank", "significance", "couple", "sweep"])
    p.add_argument("--citations", required=True, help="citer<TAB>cited edge file")
    p.add_argument("--out-dir", default="out", help="output directory")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--thetas", default="0.0,0.1,0.2,0.25,0.3,0.35,0.4,0.5,0.6,0.7,0.8,0.9",
                   help="comma-separated ascending thresholds")
    _add_common(p)

    p = sub.add_parser("analyze-deontics", help="object frequencies, deontic profiles, word trees")
    p.add_argument("--objects", help="comma-separated focal object lemmas")
    p.add_argument("--min-count", type=int, default=deontics.DEFAULT_MIN_COUNT)
    p.add_argument("--pivot", help="word-tree pivot phrase")
    p.add_argument("--conllu", help="parsed corpus supplying sentences for the word tree")
    p.add_argument("--direction", choices=["forward", "backward"], default="forward")
    p.add_argument("--max-depth", type=int, default=5)
    p.add_argument("--out-dir", default="out", help="output directory")
    _add_common(p)

    p = sub.add_parser("classify-function", help="classify document function from titles")
    p.add_argument("--titles", help="file of titles, one per line")
    p.add_argument("--labeled", help="title<TAB>label evaluation set")
    p.add_argument("--predictions", help="external title<TAB>label prediction file to mount")
    p.add_argument("--out-dir", default="out", help="output directory")
    _add_common(p)

    p = sub.add_parser("run", help="run the stage pipeline")
    p.add_argument("--pipeline", default="pipeline.mair", help="pipeline stage file")
    p.add_argument("--target", action="append", help="run only this stage and its upstream (repeatable)")
    p.add_argument("--force", action="store_true", help="ignore the cache")
    _add_common(p)

    p = sub.add_parser("status", help="report stage freshness")
    p.add_argument("--pipeline", default="pipeline.mair", help="pipeline stage file")
    _add_common(p)

    return parser


# -- handlers ----------------------------------------------------------------


def _corpus_label(kind: str) -> str:
    return "papers" if kind == "paper" else "policy"


def _cmd_ingest(args) -> int:
    stores = StoreSet(args.store_dir)
    docs: list[corpus_mod.Document] = []
    seen = set()
    for dump in args.dump:
        for doc in corpus_mod.ingest(dump, source=args.source):
            key = corpus_mod.dedup_key(doc)
            if key in seen:
                continue
            seen.add(key)
            docs.append(doc)
    if args.filter_category or args.filter_keyword:
        corpus_filter = corpus_mod.CorpusFilter(
            categories=frozenset(args.filter_category),
            keywords=frozenset(args.filter_keyword),
        )
        docs = corpus_mod.filter_corpus(docs, corpus_filter)
    store = stores.reset("documents")
    for doc in docs:
        store.put(doc.to_record())
    print(f"ingested {len(docs)} document(s) into {store.path}")
    return 0


def _cmd_tag_ig(args) -> int:
    stores = StoreSet(args.store_dir)
    lexicon = (
        ig_mod.load_lexicon(args.deontic_lexicon)
        if args.deontic_lexicon
        else ig_mod.DeonticLexicon(ig_mod.DEFAULT_DEONTIC_LEXICON)
    )
    trees = read_conllu(args.conllu)
    statements = ig_mod.tag_corpus(trees, lexicon, conj_descend=not args.no_conj_descend)
    store = stores.reset("statements")
    for i, statement in enumerate(statements):
        store.put({"id": f"stmt:{i:06d}", **statement.to_record()})
    print(f"tagged {len(statements)} statement(s) into {store.path}")
    return 0


def _cmd_extract_affiliations(args) -> int:
    stores = StoreSet(args.store_dir)
    table = aff.AliasTable.load(args.alias_table)
    kb = None
    if args.kb_url:
        kb = aff.KbClient(args.kb_url, cache_dir=args.kb_cache, offline=args.offline)
    documents = list(stores.documents.scan())
    updated = 0
    enriched: list[dict] = []
    for record in documents:
        if record.get("kind") == "paper" and record.get("latex_source"):
            records = aff.extract_affiliations(record["id"], record["latex_source"], table, kb)
            record = {**record, "affiliations": [r.to_record() for r in records]}
            updated += 1
        enriched.append(record)
    if args.rebuild:
        fresh = stores.reset("documents")
        for record in enriched:
            fresh.put(record)
    else:
        for record in enriched:
            if "affiliations" in record:
                stores.documents.put(record)
    print(f"extracted affiliations for {updated} paper(s)")
    return 0


def _cmd_link(args) -> int:
    stores = StoreSet(args.store_dir)
    docs = [corpus_mod.Document.from_record(r) for r in stores.documents.scan()]
    policies = [d for d in docs if d.kind == "policy"]
    papers = [d for d in docs if d.kind == "paper"]
    index = linking.PaperIndex(papers)
    graph = linking.extract_links(
        policies, index, min_title_len=args.min_title_len, author_window=args.author_window
    )
    store = stores.reset("networks")
    for edge in graph.edges:
        store.put(edge.to_record())
    stats = linking.graph_stats(graph)
    print(
        f"{stats['n_links']} link(s): {stats['n_citing_policies']} citing policies, "
        f"{stats['n_cited_papers']} cited papers"
    )
    return 0


def _affiliation_class(record: dict) -> str:
    sectors = {r["sector"] for r in record.get("affiliations", []) if r["sector"] != "none"}
    if sectors == {"academia"}:
        return "academia"
    if sectors == {"industry"}:
        return "industry"
    if sectors == {"academia", "industry"}:
        return "both"
    return "none"


def _load_citations(path: str | Path) -> list[tuple[str, str]]:
    records: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            citer, _, cited = line.partition("\t")
            records.append((citer.strip(), cited.strip()))
    return records


def _cmd_graph(args) -> int:
    stores = StoreSet(args.store_dir)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    citations = _load_citations(args.citations)
    paper_records = [r for r in stores.documents.scan() if r.get("kind") == "paper"]
    paper_ids = [r["id"] for r in paper_records]
    policy_years = {r["id"]: r.get("year") for r in stores.documents.scan()}
    link_records = [r for r in stores.networks.scan() if "policy_id" in r]
    citation_counts: dict[str, int] = {}
    for record in link_records:
        citation_counts[record["paper_id"]] = citation_counts.get(record["paper_id"], 0) + 1
    node_info = {
        r["id"]: graphs.NodeInfo(
            affiliation_class=_affiliation_class(r),
            year=r.get("year"),
            policy_citations=citation_counts.get(r["id"], 0),
        )
        for r in paper_records
    }

    if args.action in ("build", "pagerank", "significance"):
        graph = graphs.build_citation_graph(paper_ids, citations, node_info)

    if args.action == "build":
        graphs.write_edge_list(graph, out_dir / "citation_graph.tsv")
        graphs.write_dot(graph, out_dir / "citation_graph.dot")
        matrix = graphs.degree_breakdown(graph)
        with open(out_dir / "degree_breakdown.csv", "w", encoding="utf-8") as handle:
            handle.write("out\\in," + ",".join(graphs.AFFILIATION_CLASSES) + ",total\n")
            for cls, row in zip(graphs.AFFILIATION_CLASSES, matrix):
                handle.write(f"{cls}," + ",".join(str(v) for v in row) + f",{row.sum()}\n")
            handle.write("total," + ",".join(str(v) for v in matrix.sum(axis=0)) + f",{matrix.sum()}\n")
        stats = {"nodes": graph.n_nodes, "edges": graph.n_edges}
        (out_dir / "graph_stats.json").write_text(json.dumps(stats, sort_keys=True) + "\n", encoding="utf-8")
        print(f"citation graph: {graph.n_nodes} node(s), {graph.n_edges} edge(s)")
    elif args.action == "pagerank":
        scores = graphs.pagerank(graph, damping=args.damping, tol=args.tol)
        with open(out_dir / "pagerank.csv", "w", encoding="utf-8") as handle:
            handle.write("node,score\n")
            for node_id, score in sorted(scores.items(), key=lambda kv: (-kv[1], kv[0])):
                handle.write(f"{node_id},{score!r}\n")
        print(f"pagerank over {len(scores)} node(s) written")
    elif args.action == "significance":
        cited = [
            (record["paper_id"], policy_years[record["policy_id"]])
            for record in link_records
            if record["paper_id"] in graph.nodes and policy_years.get(record["policy_id"]) is not None
        ]
        if not cited:
            print("no policy-cited nodes with years; nothing to test", file=sys.stderr)
            return 1
        result = graphs.pagerank_significance(
            graph, cited, samples=args.samples, seed=args.seed, damping=args.damping, tol=args.tol
        )
        payload = {
            "observed_sum": result.observed_sum,
            "p_value": result.p_value,
            "samples": result.samples,
            "seed": result.seed,
            "sample_mean": float(result.sample_sums.mean()),
            "sample_max": float(result.sample_sums.max()),
            "sample_min": float(result.sample_sums.min()),
        }
        (out_dir / "significance.json").write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        print(f"observed {result.observed_sum:.6f}, empirical p = {result.p_value}")
    elif args.action == "couple":
        refs = {pid: [] for pid in paper_ids}
        for citer, cited_id in citations:
            if citer in refs:
                refs[citer].append(cited_id)
        coupling = graphs.bibliographic_coupling(refs)
        graphs.write_edge_list(coupling, out_dir / "coupling_graph.tsv")
        print(f"coupling graph: {coupling.n_nodes} node(s), {coupling.n_edges} edge(s)")
    elif args.action == "sweep":
        refs = {pid: [] for pid in paper_ids}
        for citer, cited_id in citations:
            if citer in refs:
                refs[citer].append(cited_id)
        coupling = graphs.bibliographic_coupling(refs)
        for node_id, info in node_info.items():
            if node_id in coupling.nodes:
                coupling.nodes[node_id] = info
        thetas = [float(t) for t in args.thetas.split(",")]
        rows = graphs.threshold_sweep(coupling, thetas)
        graphs.write_sweep_csv(rows, out_dir / "threshold_sweep.csv")
        print(f"sweep over {len(rows)} threshold(s) written")
    return 0


def _cmd_analyze_deontics(args) -> int:
    stores = StoreSet(args.store_dir)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    kinds = {r["id"]: r.get("kind", "policy") for r in stores.documents.scan()}
    labeled = []
    for record in stores.statements.scan():
        statement = ig_mod.IgStatement.from_record(record)
        labeled.append((_corpus_label(kinds.get(statement.doc_id, "policy")), statement))

    rows = deontics.object_frequencies(labeled, min_count=args.min_count)
    deontics.write_frequencies_csv(rows, out_dir / "object_frequencies.csv")

    objects = (
        tuple(o.strip() for o in args.objects.split(",") if o.strip())
        if args.objects
        else deontics.DEFAULT_FOCAL_OBJECTS
    )
    non_negated = [(c, s) for c, s in labeled if not s.negated]
    profiles = deontics.deontic_profiles(non_negated, objects)
    deontics.write_profiles_csv(profiles, out_dir / "deontic_profiles.csv")

    if args.pivot:
        if not args.conllu:
            print("--pivot needs --conllu to supply the sentences", file=sys.stderr)
            return 2
        sentences = [[tok.surface for tok in tree.tokens] for tree in read_conllu(args.conllu)]
        tree = deontics.word_tree(sentences, args.pivot, direction=args.direction, max_depth=args.max_depth)
        deontics.write_word_tree_json(tree, out_dir / "word_tree.json")
    print(f"{len(rows)} object row(s), {len(profiles)} profile(s) written to {out_dir}")
    return 0


def _cmd_classify_function(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model = (
        functions.PredictionFileClassifier(args.predictions)
        if args.predictions
        else functions.KeywordClassifier()
    )
    if args.titles:
        with open(args.titles, encoding="utf-8") as handle:
            titles = [line.strip() for line in handle if line.strip()]
        with open(out_dir / "function_predictions.tsv", "w", encoding="utf-8") as handle:
            for title in titles:
                handle.write(f"{title}\t{functions.classify(title, model)}\n")
        print(f"classified {len(titles)} title(s)")
    if args.labeled:
        pairs = functions.load_labeled_titles(args.labeled)
        matrix, accuracy = functions.evaluate(pairs, model)
        functions.write_confusion_csv(matrix, out_dir / "confusion_matrix.csv")
        print(f"accuracy {accuracy:.4f} over {len(pairs)} title(s)")
    if not args.titles and not args.labeled:
        print("nothing to do: pass --titles and/or --labeled", file=sys.stderr)
        return 2
    return 0


def _cmd_run(args) -> int:
    pipeline_path = Path(args.pipeline)
    stages = pipeline_mod.load_pipeline(pipeline_path)
    pipe = pipeline_mod.Pipeline(stages, base_dir=pipeline_path.parent, runner=_pipeline_runner(pipeline_path.parent))
    report = pipe.run(targets=args.target, force=args.force)
    for name in report.executed:
        print(f"ran     {name}")
    for name in report.skipped:
        print(f"skipped {name}")
    for name, outs in sorted(report.digests.items()):
        for out, digest in sorted(outs.items()):
            print(f"  {name}: {out} {digest[:12]}")
    return 0


def _cmd_status(args) -> int:
    pipeline_path = Path(args.pipeline)
    stages = pipeline_mod.load_pipeline(pipeline_path)
    pipe = pipeline_mod.Pipeline(stages, base_dir=pipeline_path.parent, runner=_pipeline_runner(pipeline_path.parent))
    for name, state in pipe.status().items():
        print(f"{state:14} {name}")
    return 0


def _pipeline_runner(base_dir: Path):
    def run_stage(argv: list[str]) -> None:
        import os

        cwd = os.getcwd()
        os.chdir(base_dir)
        try:
            code = dispatch(argv)
        finally:
            os.chdir(cwd)
        if code != 0:
            raise pipeline_mod.PipelineError(f"stage command failed with exit code {code}")

    return run_stage


_HANDLERS = {
    "ingest": _cmd_ingest,
    "tag-ig": _cmd_tag_ig,
    "extract-affiliations": _cmd_extract_affiliations,
    "link": _cmd_link,
    "graph": _cmd_graph,
    "analyze-deontics": _cmd_analyze_deontics,
    "classify-function": _cmd_classify_function,
    "run": _cmd_run,
    "status": _cmd_status,
}


def dispatch(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)
    return _HANDLERS[args.command](args)


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
