"""Citation-graph and bibliographic-coupling analytics.

A :class:`DocGraph` is either a directed citation graph or a weighted
undirected coupling graph over document ids, never both.  Node attributes
carry the affiliation class (academia / both / industry / none), the
publication year, and how many policy documents cite the node.

The analyses: degree breakdowns by affiliation class, PageRank by power
iteration, a Monte Carlo significance test for the PageRank mass of
policy-cited nodes under publication-time constraints, bibliographic
coupling as the Jaccard index of out-neighbourhoods, and weight-threshold
sweeps tracking giant-component percolation and link homogeneity.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "AFFILIATION_CLASSES",
    "NodeInfo",
    "DocGraph",
    "SweepRow",
    "SignificanceResult",
    "PageRankError",
    "UnionFind",
    "build_citation_graph",
    "degree_breakdown",
    "pagerank",
    "pagerank_significance",
    "bibliographic_coupling",
    "threshold_sweep",
    "write_edge_list",
    "write_dot",
    "write_sweep_csv",
]

logger = logging.getLogger(__name__)

#: Node classes, in the row/column order of the degree-breakdown matrix.
AFFILIATION_CLASSES = ("academia", "both", "industry", "none")


class PageRankError(RuntimeError):
    """Power iteration failed to converge; carries the last residual."""

    def __init__(self, residual: float, iterations: int) -> None:
        super().__init__(f"no convergence after {iterations} iterations (L1 residual {residual:.3e})")
        self.residual = residual
        self.iterations = iterations


@dataclass
class NodeInfo:
    affiliation_class: str = "none"
    year: int | None = None
    policy_citations: int = 0

    def __post_init__(self) -> None:
        if self.affiliation_class not in AFFILIATION_CLASSES:
            raise ValueError(f"unknown affiliation class {self.affiliation_class!r}")


class DocGraph:
    """Directed citation graph or weighted undirected coupling graph."""

    def __init__(self, directed: bool) -> None:
        self.directed = directed
        self.nodes: dict[str, NodeInfo] = {}
        self._edges: dict[tuple[str, str], float] = {}

    def add_node(self, node_id: str, info: NodeInfo | None = None) -> None:
        if node_id not in self.nodes or info is not None:
            self.nodes[node_id] = info or self.nodes.get(node_id) or NodeInfo()

    def add_edge(self, a: str, b: str, weight: float = 1.0) -> None:
        if a == b:
            raise ValueError(f"self-loop on {a!r}")
        if not 0.0 <= weight <= 1.0:
            raise ValueError(f"weight {weight} outside [0, 1]")
        if not self.directed:
            a, b = sorted((a, b))
        self.add_node(a)
        self.add_node(b)
        self._edges[(a, b)] = weight

    def has_edge(self, a: str, b: str) -> bool:
        if not self.directed:
            a, b = sorted((a, b))
        return (a, b) in self._edges

    def weight(self, a: str, b: str) -> float:
        if not self.directed:
            a, b = sorted((a, b))
        return self._edges[(a, b)]

    def edges(self) -> list[tuple[str, str, float]]:
        return [(a, b, w) for (a, b), w in self._edges.items()]

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self._edges)


class UnionFind:
    """Disjoint sets with path compression and union by size."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]

    def largest(self) -> int:
        if not self.parent:
            return 0
        return max(self.size[self.find(i)] for i in range(len(self.parent)))


def build_citation_graph(
    papers: Iterable[str],
    citation_records: Iterable[tuple[str, str]],
    node_info: Mapping[str, NodeInfo] | None = None,
) -> DocGraph:
    """Directed graph over the papers, restricted to connected nodes.

    Only nodes with at least one in- or out-edge within the paper set are
    kept.  Citation endpoints outside the set are dropped with a logged
    count.  ``node_info`` attaches affiliation class / year / policy-citation
    attributes where available.
    """
    paper_set = set(papers)
    node_info = node_info or {}
    graph = DocGraph(directed=True)
    dangling = 0
    for citer, cited in citation_records:
        if citer not in paper_set or cited not in paper_set:
            dangling += 1
            continue
        if citer == cited:
            continue
        graph.add_edge(citer, cited)
    if dangling:
        logger.info("dropped %d citation record(s) with endpoints outside the paper set", dangling)
    for node_id in graph.nodes:
        info = node_info.get(node_id)
        if info is not None:
            graph.nodes[node_id] = info
    return graph


def degree_breakdown(graph: DocGraph) -> np.ndarray:
    """4x4 edge counts: rows are the source (out) class, columns the target.

    Class order follows :data:`AFFILIATION_CLASSES`; ``matrix.sum()`` equals
    the edge count.
    """
    if not graph.directed:
        raise ValueError("degree breakdown requires a directed graph")
    index = {cls: i for i, cls in enumerate(AFFILIATION_CLASSES)}
    matrix = np.zeros((4, 4), dtype=int)
    for src, dst, _ in graph.edges():
        matrix[index[graph.nodes[src].affiliation_class], index[graph.nodes[dst].affiliation_class]] += 1
    return matrix


def pagerank(
    graph: DocGraph,
    damping: float = 0.85,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> dict[str, float]:
    """PageRank by power iteration with uniform teleport.

    Dangling-node mass is redistributed uniformly.  Iterates until the L1
    change drops below ``tol``; raises :class:`PageRankError` if that does
    not happen within ``max_iter`` iterations.  Scores sum to 1.
    """
    if not graph.directed:
        raise ValueError("pagerank requires a directed graph")
    ids = list(graph.nodes)
    n = len(ids)
    if n == 0:
        raise ValueError("pagerank requires at least one node")
    index = {node_id: i for i, node_id in enumerate(ids)}
    src = np.array([index[a] for a, _, _ in graph.edges()], dtype=np.intp)
    dst = np.array([index[b] for _, b, _ in graph.edges()], dtype=np.intp)
    out_degree = np.zeros(n, dtype=np.float64)
    np.add.at(out_degree, src, 1.0)
    dangling = out_degree == 0.0
    safe_out = np.where(dangling, 1.0, out_degree)

    rank = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        contrib = rank / safe_out
        incoming = np.zeros(n)
        if len(src):
            np.add.at(incoming, dst, contrib[src])
        dangling_mass = rank[dangling].sum()
        new_rank = (1.0 - damping) / n + damping * (incoming + dangling_mass / n)
        residual = float(np.abs(new_rank - rank).sum())
        rank = new_rank
        if residual < tol:
            return {node_id: float(rank[index[node_id]]) for node_id in ids}
    raise PageRankError(residual, max_iter)


@dataclass
class SignificanceResult:
    observed_sum: float
    sample_sums: np.ndarray
    p_value: float
    samples: int
    seed: int


def pagerank_significance(
    graph: DocGraph,
    cited_nodes: Sequence[tuple[str, int]],
    samples: int = 10_000,
    seed: int = 0,
    damping: float = 0.85,
    tol: float = 1e-10,
    scores: Mapping[str, float] | None = None,
) -> SignificanceResult:
    """Monte Carlo test of the PageRank mass held by policy-cited nodes.

    ``cited_nodes`` pairs each cited node with the citing policy document's
    year.  Every sample redraws each slot uniformly from the nodes published
    strictly before that year, without replacement within the sample.  The
    empirical p-value is the fraction of samples whose score sum reaches the
    observed sum (ties count, which is the conservative choice).

    Per-sample generators are derived from ``(seed, sample_index)`` so the
    result is reproducible regardless of execution order.
    """
    scores = scores if scores is not None else pagerank(graph, damping=damping, tol=tol)
    ordered_ids = sorted(graph.nodes)
    pools: dict[int, list[str]] = {}
    for _, year in cited_nodes:
        if year not in pools:
            pools[year] = [
                node_id
                for node_id in ordered_ids
                if graph.nodes[node_id].year is not None and graph.nodes[node_id].year < year
            ]
            if not pools[year]:
                raise ValueError(f"no nodes published before policy year {year}")

    observed = float(sum(scores[node_id] for node_id, _ in cited_nodes))
    slot_years = [year for _, year in cited_nodes]

    sums = np.empty(samples, dtype=np.float64)
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        drawn: set[str] = set()
        total = 0.0
        for year in slot_years:
            pool = pools[year]
            pick = None
            for _ in range(64):  # rejection sampling against the drawn set
                candidate = pool[int(rng.integers(len(pool)))]
                if candidate not in drawn:
                    pick = candidate
                    break
            if pick is None:
                remaining = [node_id for node_id in pool if node_id not in drawn]
                if not remaining:
                    raise ValueError(f"eligible nodes exhausted for policy year {year}")
                pick = remaining[int(rng.integers(len(remaining)))]
            drawn.add(pick)
            total += scores[pick]
        sums[i] = total

    p_value = float(np.count_nonzero(sums >= observed)) / samples
    return SignificanceResult(
        observed_sum=observed, sample_sums=sums, p_value=p_value, samples=samples, seed=seed
    )


def bibliographic_coupling(out_neighborhoods: Mapping[str, Iterable[str]]) -> DocGraph:
    """Weighted undirected graph of reference-set similarity.

    The weight of a pair is the Jaccard index of their reference sets;
    zero-weight pairs (including pairs of empty sets) carry no edge.  Every
    input node becomes a graph node even when isolated.
    """
    refs = {node: set(neigh) for node, neigh in out_neighborhoods.items()}
    graph = DocGraph(directed=False)
    for node in refs:
        graph.add_node(node)
    # invert: cited doc -> citers, so only overlapping pairs are visited
    citers_of: dict[str, list[str]] = {}
    for node, cited in refs.items():
        for ref in cited:
            citers_of.setdefault(ref, []).append(node)
    inter: Counter = Counter()
    for citers in citers_of.values():
        for a, b in combinations(sorted(citers), 2):
            inter[(a, b)] += 1
    for (a, b), shared in inter.items():
        union = len(refs[a]) + len(refs[b]) - shared
        if shared:
            graph.add_edge(a, b, weight=shared / union)
    return graph


@dataclass
class SweepRow:
    theta: float
    node_count: int
    edge_count: int
    giant_size: int
    giant_fraction: float
    homogeneity: dict[str, float] = field(default_factory=dict)


def _pair_key(class_a: str, class_b: str) -> str:
    return "|".join(sorted((class_a, class_b)))


def threshold_sweep(graph: DocGraph, thetas: Sequence[float]) -> list[SweepRow]:
    """Percolation sweep over ascending weight thresholds.

    For each theta: keep edges with weight >= theta, drop nodes left
    isolated, report node/edge counts, the giant component (union-find), its
    fraction of the surviving nodes, and the share of surviving edges per
    affiliation class pair.
    """
    if graph.directed:
        raise ValueError("threshold sweep requires a weighted undirected graph")
    if list(thetas) != sorted(thetas):
        raise ValueError("thetas must be ascending")
    rows: list[SweepRow] = []
    all_edges = graph.edges()
    for theta in thetas:
        kept = [(a, b, w) for a, b, w in all_edges if w >= theta]
        alive = sorted({a for a, _, _ in kept} | {b for _, b, _ in kept})
        index = {node: i for i, node in enumerate(alive)}
        uf = UnionFind(len(alive))
        pair_counts: Counter = Counter()
        for a, b, _ in kept:
            uf.union(index[a], index[b])
            pair_counts[_pair_key(graph.nodes[a].affiliation_class, graph.nodes[b].affiliation_class)] += 1
        giant = uf.largest()
        total_edges = len(kept)
        homogeneity = {
            key: pair_counts[key] / total_edges for key in sorted(pair_counts)
        } if total_edges else {}
        rows.append(
            SweepRow(
                theta=float(theta),
                node_count=len(alive),
                edge_count=total_edges,
                giant_size=giant,
                giant_fraction=(giant / len(alive)) if alive else 0.0,
                homogeneity=homogeneity,
            )
        )
    return rows


# --- File outputs ---------------------------------------------------------


def write_edge_list(graph: DocGraph, path: str | Path) -> None:
    """Tab-separated source/target/weight rows, deterministic order."""
    with open(path, "w", encoding="utf-8") as handle:
        for a, b, w in sorted(graph.edges()):
            handle.write(f"{a}\t{b}\t{w!r}\n")


def write_dot(graph: DocGraph, path: str | Path) -> None:
    kind = "digraph" if graph.directed else "graph"
    arrow = "->" if graph.directed else "--"
    lines = [f"{kind} docs {{"]
    for node_id in sorted(graph.nodes):
        info = graph.nodes[node_id]
        lines.append(f'  "{node_id}" [class="{info.affiliation_class}"];')
    for a, b, w in sorted(graph.edges()):
        lines.append(f'  "{a}" {arrow} "{b}" [weight={w!r}];')
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_sweep_csv(rows: Sequence[SweepRow], path: str | Path) -> None:
    import csv

    pair_keys = sorted({key for row in rows for key in row.homogeneity})
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["theta", "node_count", "edge_count", "giant_size", "giant_fraction"]
            + [f"share_{key}" for key in pair_keys]
        )
        for row in rows:
            writer.writerow(
                [repr(row.theta), row.node_count, row.edge_count, row.giant_size, repr(row.giant_fraction)]
                + [repr(row.homogeneity.get(key, 0.0)) for key in pair_keys]
            )
