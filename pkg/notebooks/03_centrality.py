"""
Which nodes matter
==================

Betweenness counts the shortest paths running through a node.
Eigenvector centrality rewards nodes joined to other central nodes.
"""

# %%
import numpy as np

from gridnet import generate_synthetic_grid
from gridnet.centrality import betweenness, eigenvector_centrality

g = generate_synthetic_grid(60, 70, weight_dist=("uniform", 0.1, 1.0), seed=2)

b = betweenness(g)
bw = betweenness(g, use_weights=True)
top = np.argsort(-b.values)[:5]
for i in top:
    print(f"{g.node_ids[i]:>4s}  hops {b.values[i]:8.2f}   resistance {bw.values[i]:8.2f}")

# %%
# Fractional credit splits a pair among its equally short paths.  The raw
# mode instead counts every path through the node.
raw = betweenness(g, normalized=False)
print("max raw count:", raw.values.max(), " max fractional:", b.values.max())

# %%
for weighted in (False, True):
    r = eigenvector_centrality(g, use_weights=weighted)
    print("weighted" if weighted else "topology", "lambda=%.4f" % r.eigenvalue,
          [nid for _, nid, _ in r.top(5)])
