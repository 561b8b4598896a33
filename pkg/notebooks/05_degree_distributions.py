"""
Fitting degree distributions
============================

The empirical CCDF P(X >= x) is fitted with three candidate models by
damped least squares.  The simplest model that fits nearly as well wins.
"""

# %%
import numpy as np

from gridnet import generate_synthetic_grid
from gridnet.distributions_fit import ccdf, classify, degree_ccdf, fit

x = np.arange(1, 30.0)
y = 0.9 * x ** -2.0
pl = fit((x, y), "power_law")
print(pl.parameters, "converged:", pl.converged)

# %%
x = np.arange(0, 40.0)
y = 0.6 * np.exp(-0.8 * x) + 0.4 * np.exp(-0.1 * x)
verdict = classify((x, y))
print("best:", verdict.best_model)
for f in verdict.fits:
    print(f"  {f.model:22s} sse={f.sse:.3g}")

# %%
# On a grid-like graph, degrees are small integers, so the CCDF has only a
# handful of points.
g = generate_synthetic_grid(300, 340, weight_dist=("uniform", 0.05, 2.0), seed=3)
d = degree_ccdf(g)
print([(int(x), round(float(p), 4)) for x, p in d.points()])
wd = degree_ccdf(g, weighted=True)
print("weighted degree model:", classify(wd).best_model)

# %%
# Arbitrary samples work too.
sample = np.random.default_rng(0).exponential(3.0, 2000)
print(fit(ccdf(sample, kind="sample"), "exponential").parameters)
