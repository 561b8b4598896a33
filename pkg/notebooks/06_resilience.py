"""
Removing nodes
==============

Nodes are removed in batches of a fixed fraction, either at random or in
order of a centrality.  After each batch we record the largest surviving
component relative to the original size.
"""

# %%
from gridnet import generate_synthetic_grid
from gridnet.resilience import RemovalPolicy, compare_policies, robustness_at

g = generate_synthetic_grid(150, 170, weight_dist=("uniform", 0.1, 1.0), seed=6)
policies = [
    RemovalPolicy("random", seed=1),
    RemovalPolicy("degree"),
    RemovalPolicy("betweenness"),
    RemovalPolicy("weighted_degree"),
]
traces = compare_policies(g, policies, step=0.05, trials=20)

for t in traces:
    print(f"{t.policy.kind:16s}", " ".join(f"{robustness_at(t, f):.2f}" for f in (0.05, 0.1, 0.2, 0.3)))

# %%
# Targeted attacks fragment sparse grids far faster than random failures.
# A static ranking (computed once) is usually a weaker attack.
static = compare_policies(g, [RemovalPolicy("betweenness", recompute=False)], 0.05)[0]
print("static betweenness at 10%:", robustness_at(static, 0.1))

# %%
print(traces[1].to_csv()[:120])
