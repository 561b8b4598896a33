"""
Building and loading a grid
===========================

A grid is a set of typed nodes joined by cables.  Each cable carries a
resistance per km and a length; its weight is their product.  Short links
inside a substation get a nominal weight of 1e-9.
"""

# %%
import tempfile
from pathlib import Path

from gridnet import build_graph, connected_components, load_graph
from gridnet.grid_model import EdgeRecord, NodeRecord
from gridnet.ingest import write_grid

nodes = [NodeRecord("sub", "substation"), NodeRecord("t1", "transformer"),
         NodeRecord("t2", "transformer"), NodeRecord("c1"), NodeRecord("c2"),
         NodeRecord("island")]
edges = [
    EdgeRecord("sub", "t1", 0.2, 1.5, False, 300.0),
    EdgeRecord("sub", "t2", 0.2, 2.0, False, 300.0),
    EdgeRecord("t1", "t2", 0.0, 0.0, True, 500.0),      # a link
    EdgeRecord("t1", "c1", 0.6, 0.4, False, 120.0),
    EdgeRecord("t1", "c1", 0.9, 0.4, False, 80.0),      # parallel cable
    EdgeRecord("t2", "c2", 0.6, 0.7, False, None),      # no current rating
]
g = build_graph(nodes, edges)
print(g.order, "nodes,", g.size, "cables")
print("weights:", g.weights)

# %%
# Parallel cables collapse to the lighter one for anything path based,
# but the multigraph degree still counts both.
print("degree of t1:", g.degrees()[g.index("t1")])
print("neighbours of t1:", {g.node_ids[k]: w for k, w in g.neighbors()[g.index("t1")].items()})

# %%
# ``island`` has no cables, so the grid splits.  Components come back
# largest first.
for c in connected_components(g):
    print(c.order, list(c.node_ids))

# %%
# Round trip through both on-disk formats.
with tempfile.TemporaryDirectory() as d:
    csv_dir = write_grid(nodes, edges, Path(d) / "grid")
    js = write_grid(nodes, edges, Path(d) / "grid.json")
    print(sorted(p.name for p in csv_dir.iterdir()))
    a, b = load_graph(csv_dir), load_graph(js)
    print("same weights:", list(a.weights) == list(b.weights))
