import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mair.graphs import (
    AFFILIATION_CLASSES,
    DocGraph,
    NodeInfo,
    PageRankError,
    UnionFind,
    bibliographic_coupling,
    build_citation_graph,
    degree_breakdown,
    pagerank,
    pagerank_significance,
    threshold_sweep,
)


def directed_graph(edges, classes=None, years=None):
    graph = DocGraph(directed=True)
    for a, b in edges:
        graph.add_edge(a, b)
    for node in graph.nodes:
        graph.nodes[node] = NodeInfo(
            affiliation_class=(classes or {}).get(node, "none"),
            year=(years or {}).get(node),
        )
    return graph


class TestDocGraph:
    def test_no_self_loops(self):
        graph = DocGraph(directed=True)
        with pytest.raises(ValueError):
            graph.add_edge("a", "a")

    def test_weight_range(self):
        graph = DocGraph(directed=False)
        with pytest.raises(ValueError):
            graph.add_edge("a", "b", weight=1.5)

    def test_undirected_edge_is_symmetric(self):
        graph = DocGraph(directed=False)
        graph.add_edge("b", "a", weight=0.5)
        assert graph.has_edge("a", "b")
        assert graph.weight("a", "b") == 0.5


class TestBuildCitationGraph:
    def test_isolated_nodes_excluded(self):
        graph = build_citation_graph(["A", "B", "C"], [("A", "B")])
        assert set(graph.nodes) == {"A", "B"}
        assert graph.n_edges == 1

    def test_dangling_endpoints_dropped(self):
        graph = build_citation_graph(["A", "B"], [("A", "B"), ("A", "X"), ("Y", "B")])
        assert graph.n_edges == 1

    def test_synthetic_generator_tally(self):
        rng = np.random.default_rng(7)
        papers = [f"p{i}" for i in range(50)]
        edges = set()
        while len(edges) < 120:
            a, b = rng.integers(0, 50, size=2)
            if a != b:
                edges.add((f"p{a}", f"p{b}"))
        graph = build_citation_graph(papers, sorted(edges))
        expected_nodes = {a for a, _ in edges} | {b for _, b in edges}
        assert set(graph.nodes) == expected_nodes
        assert graph.n_edges == len(edges)


class TestDegreeBreakdown:
    def test_single_edge_one_cell(self):
        graph = directed_graph([("a", "b")], classes={"a": "academia", "b": "industry"})
        matrix = degree_breakdown(graph)
        assert matrix.sum() == 1
        row = AFFILIATION_CLASSES.index("academia")
        col = AFFILIATION_CLASSES.index("industry")
        assert matrix[row, col] == 1

    def test_conservation_on_random_graph(self):
        rng = np.random.default_rng(3)
        edges = set()
        while len(edges) < 20:
            a, b = rng.integers(0, 12, size=2)
            if a != b:
                edges.add((f"n{a}", f"n{b}"))
        classes = {f"n{i}": AFFILIATION_CLASSES[i % 4] for i in range(12)}
        graph = directed_graph(sorted(edges), classes=classes)
        matrix = degree_breakdown(graph)
        assert matrix.sum() == len(edges)
        for i, cls in enumerate(AFFILIATION_CLASSES):
            out_edges = sum(1 for a, b in edges if classes[a] == cls)
            in_edges = sum(1 for a, b in edges if classes[b] == cls)
            assert matrix[i].sum() == out_edges
            assert matrix[:, i].sum() == in_edges


class TestPageRank:
    def test_three_cycle_uniform(self):
        graph = directed_graph([("a", "b"), ("b", "c"), ("c", "a")])
        scores = pagerank(graph)
        for value in scores.values():
            assert abs(value - 1 / 3) <= 1e-12

    def test_two_node_closed_form(self):
        # A -> B with dangling mass from B redistributed uniformly:
        #   a = (1-d)/2 + d*b/2
        #   b = (1-d)/2 + d*a + d*b/2
        damping = 0.85
        coeffs = np.array([[1.0, -damping / 2], [-damping, 1 - damping / 2]])
        rhs = np.array([(1 - damping) / 2, (1 - damping) / 2])
        expected_a, expected_b = np.linalg.solve(coeffs, rhs)
        graph = directed_graph([("A", "B")])
        scores = pagerank(graph, damping=damping)
        assert abs(scores["A"] - expected_a) <= 1e-9
        assert abs(scores["B"] - expected_b) <= 1e-9

    def _dense_oracle(self, graph, damping, iterations=2000):
        ids = list(graph.nodes)
        index = {node: i for i, node in enumerate(ids)}
        n = len(ids)
        out_degree = np.zeros(n)
        for a, _, _ in graph.edges():
            out_degree[index[a]] += 1
        transition = np.zeros((n, n))
        for a, b, _ in graph.edges():
            transition[index[b], index[a]] = 1.0 / out_degree[index[a]]
        for i in range(n):
            if out_degree[i] == 0:
                transition[:, i] = 1.0 / n
        google = damping * transition + (1 - damping) / n
        rank = np.full(n, 1.0 / n)
        for _ in range(iterations):
            rank = google @ rank
        return {node: rank[index[node]] for node in ids}

    def test_matches_dense_oracle_on_random_graphs(self):
        rng = np.random.default_rng(11)
        for trial in range(5):
            edges = set()
            while len(edges) < 60:
                a, b = rng.integers(0, 30, size=2)
                if a != b:
                    edges.add((f"n{a}", f"n{b}"))
            graph = directed_graph(sorted(edges))
            scores = pagerank(graph, tol=1e-14)
            oracle = self._dense_oracle(graph, damping=0.85)
            for node in graph.nodes:
                assert abs(scores[node] - oracle[node]) <= 1e-8

    def test_scores_sum_to_one_and_nonnegative(self):
        rng = np.random.default_rng(5)
        edges = {(f"n{a}", f"n{b}") for a, b in rng.integers(0, 15, size=(40, 2)) if a != b}
        graph = directed_graph(sorted(edges))
        scores = pagerank(graph)
        assert abs(sum(scores.values()) - 1.0) <= 1e-9
        assert all(v >= 0 for v in scores.values())

    def test_relabel_invariance(self):
        edges = [("a", "b"), ("b", "c"), ("c", "a"), ("a", "c"), ("d", "a")]
        graph = directed_graph(edges)
        mapping = {"a": "z9", "b": "q2", "c": "m5", "d": "k1"}
        relabeled = directed_graph([(mapping[a], mapping[b]) for a, b in edges])
        scores = pagerank(graph, tol=1e-14)
        relabeled_scores = pagerank(relabeled, tol=1e-14)
        for node, score in scores.items():
            assert abs(relabeled_scores[mapping[node]] - score) <= 1e-12
        order = [n for n, _ in sorted(scores.items(), key=lambda kv: -kv[1])]
        relabeled_order = [n for n, _ in sorted(relabeled_scores.items(), key=lambda kv: -kv[1])]
        assert [mapping[n] for n in order] == relabeled_order

    def test_non_convergence_raises(self):
        graph = directed_graph([("a", "b"), ("b", "a")])
        with pytest.raises(PageRankError):
            pagerank(graph, tol=0.0, max_iter=3)

    def test_empty_and_undirected_rejected(self):
        with pytest.raises(ValueError):
            pagerank(DocGraph(directed=True))
        with pytest.raises(ValueError):
            pagerank(DocGraph(directed=False))


def planted_hub_graph(n_nodes=200, n_hubs=23, year=2015):
    """Hubs receive edges from most other nodes, so they top the ranking."""
    graph = DocGraph(directed=True)
    hubs = [f"hub{i:02d}" for i in range(n_hubs)]
    others = [f"n{i:03d}" for i in range(n_nodes - n_hubs)]
    rng = np.random.default_rng(42)
    for j, node in enumerate(others):
        for hub in hubs:
            if rng.random() < 0.5:
                graph.add_edge(node, hub)
        graph.add_edge(node, others[(j + 1) % len(others)])
    for node in graph.nodes:
        graph.nodes[node] = NodeInfo(year=year)
    return graph, hubs


class TestSignificance:
    def test_uniform_scores_p_is_one(self):
        graph = directed_graph([(f"n{i}", f"n{(i + 1) % 8}") for i in range(8)],
                               years={f"n{i}": 2010 for i in range(8)})
        uniform = {node: 1 / 8 for node in graph.nodes}
        cited = [(f"n{i}", 2020) for i in range(5)]
        result = pagerank_significance(graph, cited, samples=500, seed=1, scores=uniform)
        assert result.p_value == 1.0
        assert np.all(result.sample_sums == result.observed_sum)

    def test_planted_top_nodes_significant(self):
        graph, hubs = planted_hub_graph()
        cited = [(hub, 2020) for hub in hubs]
        result = pagerank_significance(graph, cited, samples=10_000, seed=7)
        assert result.p_value < 0.01

    def test_deterministic_under_seed(self):
        graph, hubs = planted_hub_graph(n_nodes=60, n_hubs=5)
        cited = [(hub, 2020) for hub in hubs]
        first = pagerank_significance(graph, cited, samples=300, seed=123)
        second = pagerank_significance(graph, cited, samples=300, seed=123)
        assert np.array_equal(first.sample_sums, second.sample_sums)
        assert first.p_value == second.p_value
        assert first.observed_sum == second.observed_sum

    def test_time_constraint_restricts_pool(self):
        # cited node published 2019; constraint year 2020 admits only <2020
        years = {"old1": 2000, "old2": 2001, "new1": 2019, "new2": 2021}
        edges = [("old1", "old2"), ("old2", "new1"), ("new1", "new2"), ("new2", "old1")]
        graph = directed_graph(edges, years=years)
        scores = {node: 0.25 for node in graph.nodes}
        result = pagerank_significance(graph, [("new1", 2020)], samples=50, seed=3, scores=scores)
        assert result.p_value == 1.0  # all eligible nodes share the same score

    def test_zero_eligible_year_errors(self):
        graph = directed_graph([("a", "b")], years={"a": 2015, "b": 2016})
        with pytest.raises(ValueError, match="1950"):
            pagerank_significance(graph, [("a", 1950)], samples=10, seed=0,
                                  scores={"a": 0.5, "b": 0.5})


class TestBibliographicCoupling:
    def test_depicted_reference_sets(self):
        refs = {
            "1": {"2", "3", "4", "8", "9", "10"},
            "5": {"7", "6", "8", "9", "10"},
        }
        graph = bibliographic_coupling(refs)
        assert graph.weight("1", "5") == 3 / 8
        assert graph.weight("1", "5") == 0.375

    def test_identical_sets_weight_one(self):
        graph = bibliographic_coupling({"a": {"x", "y"}, "b": {"x", "y"}})
        assert graph.weight("a", "b") == 1.0

    def test_disjoint_sets_no_edge(self):
        graph = bibliographic_coupling({"a": {"x"}, "b": {"y"}})
        assert not graph.has_edge("a", "b")
        assert graph.n_edges == 0

    def test_empty_sets_no_edge_but_nodes_kept(self):
        graph = bibliographic_coupling({"a": set(), "b": set()})
        assert set(graph.nodes) == {"a", "b"}
        assert graph.n_edges == 0

    def test_thousand_random_pairs_match_brute_force(self):
        rng = np.random.default_rng(13)
        universe = [f"r{i}" for i in range(40)]
        refs = {
            f"p{i}": {universe[j] for j in rng.choice(40, size=rng.integers(0, 12), replace=False)}
            for i in range(50)
        }
        graph = bibliographic_coupling(refs)
        ids = sorted(refs)
        checked = 0
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                inter = len(refs[a] & refs[b])
                union = len(refs[a] | refs[b])
                expected = inter / union if union else 0.0
                if expected == 0.0:
                    assert not graph.has_edge(a, b)
                else:
                    assert graph.weight(a, b) == expected
                checked += 1
        assert checked >= 1000

    def test_weights_within_unit_interval(self):
        rng = np.random.default_rng(19)
        refs = {f"p{i}": set(map(str, rng.integers(0, 20, size=6))) for i in range(20)}
        graph = bibliographic_coupling(refs)
        assert all(0 < w <= 1 for _, _, w in graph.edges())


def two_community_graph(intra=0.8, inter=0.3, size=10):
    graph = DocGraph(directed=False)
    groups = {
        "A": [f"A{i}" for i in range(size)],
        "B": [f"B{i}" for i in range(size)],
    }
    for label, members in groups.items():
        cls = "academia" if label == "A" else "industry"
        for node in members:
            graph.add_node(node, NodeInfo(affiliation_class=cls))
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                graph.add_edge(a, b, weight=intra)
    for a, b in zip(groups["A"], groups["B"]):
        graph.add_edge(a, b, weight=inter)
    return graph


def brute_force_giant(graph, theta):
    kept = [(a, b) for a, b, w in graph.edges() if w >= theta]
    nodes = {a for a, _ in kept} | {b for _, b in kept}
    adjacency = {n: set() for n in nodes}
    for a, b in kept:
        adjacency[a].add(b)
        adjacency[b].add(a)
    best = 0
    seen = set()
    for start in nodes:
        if start in seen:
            continue
        stack, component = [start], set()
        while stack:
            node = stack.pop()
            if node in component:
                continue
            component.add(node)
            stack.extend(adjacency[node] - component)
        seen |= component
        best = max(best, len(component))
    return best


class TestThresholdSweep:
    def test_theta_zero_keeps_graph_minus_isolates(self):
        graph = two_community_graph()
        graph.add_node("loner", NodeInfo())
        rows = threshold_sweep(graph, [0.0])
        assert rows[0].node_count == 20  # loner dropped
        assert rows[0].edge_count == graph.n_edges
        assert rows[0].giant_size == 20

    def test_theta_above_max_weight_empty(self):
        graph = two_community_graph()
        rows = threshold_sweep(graph, [0.95])
        assert rows[0].node_count == 0
        assert rows[0].edge_count == 0
        assert rows[0].giant_size == 0
        assert rows[0].homogeneity == {}

    def test_two_community_breakdown_between_weight_levels(self):
        graph = two_community_graph(intra=0.8, inter=0.3)
        thetas = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
        rows = threshold_sweep(graph, thetas)
        by_theta = {row.theta: row for row in rows}
        assert by_theta[0.3].giant_size == 20     # inter links still present
        assert by_theta[0.4].giant_size == 10     # broke into two communities
        assert by_theta[0.9].giant_size == 0
        breakdown = next(row.theta for row in rows if 0 < row.giant_size < 20)
        assert 0.3 < breakdown <= 0.8

    def test_matches_brute_force_components(self):
        rng = np.random.default_rng(23)
        graph = DocGraph(directed=False)
        for i in range(30):
            graph.add_node(f"n{i}")
        for _ in range(60):
            a, b = rng.integers(0, 30, size=2)
            if a != b:
                graph.add_edge(f"n{a}", f"n{b}", weight=float(rng.random()))
        thetas = [0.0, 0.25, 0.5, 0.75, 1.0]
        rows = threshold_sweep(graph, thetas)
        for row in rows:
            assert row.giant_size == brute_force_giant(graph, row.theta)

    def test_homogeneity_shares(self):
        graph = two_community_graph(intra=0.8, inter=0.3, size=3)
        rows = threshold_sweep(graph, [0.0, 0.5])
        full = rows[0]
        # 3 intra A + 3 intra B + 3 inter
        assert full.homogeneity["academia|academia"] == 3 / 9
        assert full.homogeneity["industry|industry"] == 3 / 9
        assert full.homogeneity["academia|industry"] == 3 / 9
        cut = rows[1]
        assert cut.homogeneity["academia|academia"] == 3 / 6
        assert "academia|industry" not in cut.homogeneity

    def test_unsorted_thetas_rejected(self):
        with pytest.raises(ValueError):
            threshold_sweep(two_community_graph(), [0.5, 0.1])


@st.composite
def weighted_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=12))
    n_edges = draw(st.integers(min_value=0, max_value=20))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    edges = draw(st.lists(pairs, max_size=n_edges))
    weights = draw(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=len(edges), max_size=len(edges)))
    graph = DocGraph(directed=False)
    for i in range(n):
        graph.add_node(f"n{i}")
    for (a, b), w in zip(edges, weights):
        graph.add_edge(f"n{a}", f"n{b}", weight=w)
    return graph


@given(weighted_graphs(), st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=8))
@settings(max_examples=150)
def test_sweep_monotonicity(graph, thetas):
    rows = threshold_sweep(graph, sorted(thetas))
    for earlier, later in zip(rows, rows[1:]):
        assert later.edge_count <= earlier.edge_count
        assert later.giant_size <= earlier.giant_size


def test_union_find_against_dfs():
    rng = np.random.default_rng(31)
    for _ in range(10):
        n = 20
        uf = UnionFind(n)
        adjacency = {i: set() for i in range(n)}
        for _ in range(15):
            a, b = rng.integers(0, n, size=2)
            if a == b:
                continue
            uf.union(int(a), int(b))
            adjacency[int(a)].add(int(b))
            adjacency[int(b)].add(int(a))
        seen, best = set(), 0
        for start in range(n):
            if start in seen:
                continue
            stack, comp = [start], set()
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                stack.extend(adjacency[x] - comp)
            seen |= comp
            best = max(best, len(comp))
        assert uf.largest() == best
