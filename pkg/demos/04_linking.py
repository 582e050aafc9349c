"""Mine citation links from policy bodies to the paper index.

A link needs either an arXiv identifier present in the index or the paper's
normalised title as a substring with an author last name within 300
characters.  Titles shorter than 20 characters never link.
"""

from pathlib import Path

from mair.corpus import ingest
from mair.linking import PaperIndex, extract_links, graph_stats

FIXTURES = Path(__file__).parent / "fixtures"

papers = ingest(FIXTURES / "docs_papers.jsonl")
policies = ingest(FIXTURES / "docs_policy.jsonl")

graph = extract_links(policies, PaperIndex(papers))
for edge in graph.edges:
    print(f"{edge.policy_id:6} -> {edge.paper_id:12} [{edge.method}]  span={edge.matched_span[:50]!r}")

stats = graph_stats(graph)
print(
    f"\n{stats['n_links']} links: {stats['n_citing_policies']} citing policies, "
    f"{stats['n_cited_papers']} cited papers"
)
