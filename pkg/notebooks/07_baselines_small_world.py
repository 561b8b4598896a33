"""
Random baselines and the small-world test
=========================================

Each grid is compared with connected random graphs of the same order and
size.  A small world has a path length close to random with much higher
clustering.
"""

# %%
from gridnet import generate_synthetic_grid
from gridnet.baselines import baseline_metrics, random_connected_graph, small_world_test
from gridnet.path_metrics import metrics_report

r = random_connected_graph(50, 60, seed=0)
print(r.order, r.size, r.is_connected())

# %%
g = generate_synthetic_grid(188, 191, seed=5)
m = metrics_report(g)
base = baseline_metrics(g.order, g.size, seed=0, trials=20)
print(f"sample CPL {m.cpl:.3f} CC {m.cc:.5f}")
print(f"random CPL {base.cpl:.3f}+-{base.cpl_sd:.3f} CC {base.cc:.5f}+-{base.cc_sd:.5f}")

v = small_world_test(m, base)
print(v)

# %%
# Nearly-tree grids have almost no triangles, so the clustering ratio is
# often undefined or tiny and the verdict is negative.
print(small_world_test({"cpl": 17.878, "cc": 0.0}, {"cpl": 4.345, "cc": 0.00532}).is_small_world)
