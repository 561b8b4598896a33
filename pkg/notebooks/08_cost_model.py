"""
From topology to transport cost
===============================

alpha collects dissipation (line and substation losses).  beta collects
unreliability: path redundancy over robustness and log capacity.  A quadratic
price surface in (alpha, beta) places networks against each other.
"""

# %%
import numpy as np

from gridnet import generate_synthetic_grid
from gridnet.cost_model import cost_params, k_shortest_paths, price_surface

g = generate_synthetic_grid(40, 55, weight_dist=("uniform", 0.05, 1.0), seed=2,
                            current_dist=("uniform", 60.0, 400.0))
p = cost_params(g, seed=2)
for k, v in p.to_dict().items():
    print(f"{k:14s} {v:.5f}")

# %%
# The redundancy term looks at the ten lightest loopless routes per pair.
for w, path in k_shortest_paths(g.neighbors(), 0, 17, k=4):
    print(round(w, 4), [g.node_ids[i] for i in path])

# %%
h = generate_synthetic_grid(40, 45, weight_dist=("uniform", 0.05, 1.0), seed=3,
                            current_dist=("uniform", 60.0, 400.0))
q = cost_params(h, seed=3)
a_top = 1.25 * max(p.alpha, q.alpha)
b_top = 1.25 * max(p.beta, q.beta)
surf = price_surface(np.linspace(0, a_top, 5), np.linspace(0, b_top, 4), base=1.0, refs=(a_top, b_top),
                     markers=[("g", p.alpha, p.beta), ("h", q.alpha, q.beta)])
print(np.round(surf.price, 2))
print(surf.markers_csv())
