"""
Path lengths and clustering
===========================

Unweighted hop distances describe the topology alone; resistance-weighted
distances describe how far power actually travels.
"""

# %%
from gridnet import generate_synthetic_grid
from gridnet.path_metrics import (
    average_path_length,
    characteristic_path_length,
    clustering_coefficient,
    metrics_report,
    traversed_nodes_increase,
    weighted_cpl,
)

g = generate_synthetic_grid(120, 135, weight_dist=("uniform", 0.05, 1.2), seed=4)

print(f"APL  {average_path_length(g):.3f}")
print(f"CPL  {characteristic_path_length(g):.3f}")   # median of per-node means
print(f"CC   {clustering_coefficient(g):.5f}")
print(f"WCPL {weighted_cpl(g):.3f}")

# %%
# Minimum-resistance routes are often longer in hops than the fewest-hop
# routes.  The percentage below says by how much, averaged over all pairs.
print(f"extra hops on weighted paths: {traversed_nodes_increase(g):.1f}%")

# %%
# Everything above in one record, as it appears in reports.
for k, v in metrics_report(g).to_dict().items():
    print(f"{k:28s} {v}")
