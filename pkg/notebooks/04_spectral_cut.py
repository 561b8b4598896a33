"""
Cutting a grid in two
=====================

The sign pattern of the Laplacian's Fiedler vector splits a network into
two well connected halves.  The cables crossing the split are the ones
whose simultaneous loss separates them.
"""

# %%
from gridnet import GridGraph
from gridnet.spectral_cut import fiedler_bisect, laplacian, recursive_bisect, zero_eigenvalue_count

# two triangles joined by one cable
pairs = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]
g = GridGraph([f"b{i}" for i in range(6)], pairs, [1.0] * len(pairs))
print(laplacian(g))

cut = fiedler_bisect(g)
print("sides:", cut.side_a, cut.side_b)
print("critical:", cut.critical_edges, "lambda2 = %.4f" % cut.fiedler_value)

# %%
# Disconnected graphs have one zero eigenvalue per component.
h = GridGraph([f"b{i}" for i in range(6)], pairs[:-1], [1.0] * 6)
print("zero eigenvalues:", zero_eigenvalue_count(h))

# %%
from gridnet import generate_synthetic_grid

big = generate_synthetic_grid(200, 230, seed=1)
tree = recursive_bisect(big, depth=2)
for level, node in tree.walk(depth=2):
    print("  " * level, len(node.side_a), "|", len(node.side_b), "->", node.n_critical, "critical")
