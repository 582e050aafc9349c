"""Bibliographic coupling and weight-threshold percolation.

Coupling weight is the Jaccard index of two papers' reference sets.  Raising
the edge-weight threshold theta prunes weak links until the giant component
breaks apart; the sweep reports sizes and link homogeneity per class pair.
"""

import numpy as np

from mair.graphs import NodeInfo, bibliographic_coupling, threshold_sweep

rng = np.random.default_rng(5)

# two communities reading mostly disjoint literatures, with a shared core
core = [f"core{i}" for i in range(4)]
lit_a = [f"a{i}" for i in range(12)]
lit_b = [f"b{i}" for i in range(12)]

refs = {}
for i in range(14):
    refs[f"paperA{i}"] = set(rng.choice(lit_a, size=6, replace=False)) | {core[i % 4]}
for i in range(14):
    refs[f"paperB{i}"] = set(rng.choice(lit_b, size=6, replace=False)) | {core[i % 4]}

graph = bibliographic_coupling(refs)
for node in graph.nodes:
    cls = "academia" if node.startswith("paperA") else "industry"
    graph.nodes[node] = NodeInfo(affiliation_class=cls)

weights = [w for _, _, w in graph.edges()]
print(f"coupling graph: {graph.n_nodes} nodes, {graph.n_edges} edges, "
      f"weights {min(weights):.3f}..{max(weights):.3f}")

print(f"\n{'theta':>6} {'nodes':>6} {'edges':>6} {'giant':>6} {'fraction':>9}  homogeneous shares")
for row in threshold_sweep(graph, [0.0, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5]):
    homo = {k: round(v, 2) for k, v in row.homogeneity.items() if k.split("|")[0] == k.split("|")[1]}
    print(
        f"{row.theta:6.2f} {row.node_count:6d} {row.edge_count:6d} "
        f"{row.giant_size:6d} {row.giant_fraction:9.3f}  {homo}"
    )
