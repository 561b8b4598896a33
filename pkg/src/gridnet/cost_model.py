"""Topology-driven energy transport cost parameters.

``alpha`` aggregates dissipation (line losses plus substation losses) and
``beta`` aggregates unreliability (redundancy cost over robustness times
log-capacity)::

    alpha = line_losses + substation_losses
    beta  = redundancy / (robustness * ln(capacity))
"""

from __future__ import annotations

import csv
import heapq
import io
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import GridError, MissingCurrentError, ValidationError
from .grid_model import GridGraph
from .path_metrics import (
    _require_connected,
    edge_average_weight,
    mean_interior_nodes,
    weighted_cpl,
)
from .resilience import RemovalPolicy, compare_policies, robustness_at, simulate_removal

K_PATHS = 10
SAMPLE_FRACTION = 0.4
ROBUSTNESS_FRACTION = 0.2
ROBUSTNESS_STEP = 0.05
ROBUSTNESS_TRIALS = 10
# capacities this close to 1 are rounding noise on an exact 1
CAP_TOL = 1e-12


# -- K shortest loopless paths ------------------------------------------
def _shortest(adj, s, t, banned_nodes, banned_edges):
    """Min-weight path ``s -> t`` avoiding banned nodes/edges; fewest hops on ties."""
    inf = float("inf")
    dist = {s: (0.0, 0)}
    pred = {s: None}
    heap = [(0.0, 0, s)]
    done = set()
    while heap:
        d, h, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == t:
            path = [t]
            while pred[path[-1]] is not None:
                path.append(pred[path[-1]])
            return path[::-1]
        for v, w in adj[u].items():
            if v in banned_nodes or v in done or (u, v) in banned_edges:
                continue
            key = (d + w, h + 1)
            if key < dist.get(v, (inf, 0)):
                dist[v] = key
                pred[v] = u
                heapq.heappush(heap, (key[0], key[1], v))
    return None


def path_weight(adj, path):
    total = 0.0
    for a, b in zip(path, path[1:]):
        total += adj[a][b]
    return total


def k_shortest_paths(adj, source, target, k=K_PATHS):
    """Up to ``k`` loopless paths in non-decreasing weight (Yen's algorithm).

    Parameters
    ----------
    adj : list of dict
        Collapsed adjacency (``GridGraph.neighbors()``).

    Returns
    -------
    list of (weight, path) with ``path`` a tuple of node indices.
    """
    if source == target:
        return [(0.0, (source,))]
    first = _shortest(adj, source, target, set(), set())
    if first is None:
        return []
    found = [(path_weight(adj, first), tuple(first))]
    seen = {tuple(first)}
    candidates = []
    while len(found) < k:
        _, prev = found[-1]
        for i in range(len(prev) - 1):
            spur = prev[i]
            root = prev[: i + 1]
            banned_edges = set()
            for _, p in found:
                if p[: i + 1] == root:
                    banned_edges.add((p[i], p[i + 1]))
                    banned_edges.add((p[i + 1], p[i]))
            banned_nodes = set(root[:-1])
            tail = _shortest(adj, spur, target, banned_nodes, banned_edges)
            if tail is None:
                continue
            cand = root[:-1] + tuple(tail)
            if cand in seen:
                continue
            seen.add(cand)
            heapq.heappush(candidates, (path_weight(adj, cand), len(cand), cand))
        if not candidates:
            break
        w, _, p = heapq.heappop(candidates)
        found.append((w, p))
    return found


# -- constituents --------------------------------------------------------
def line_losses(g: GridGraph) -> float:
    """Weighted characteristic path length over the mean edge weight."""
    return weighted_cpl(g) / edge_average_weight(g)


def substation_losses(g: GridGraph) -> float:
    """Average number of intermediate nodes on minimum-weight paths."""
    return mean_interior_nodes(g)


def robustness(g: GridGraph, seed: int = 0) -> float:
    """Mean relative LCC order after removing 20% of the nodes.

    Average of the random policy (mean of ``ROBUSTNESS_TRIALS`` seeds) and
    the weighted-degree policy, both with step 0.05.
    """
    _require_connected(g, min_order=1)
    rnd = compare_policies(
        g, [RemovalPolicy("random", seed=seed)], ROBUSTNESS_STEP, ROBUSTNESS_TRIALS, workers=1
    )[0]
    wdeg = simulate_removal(g, RemovalPolicy("weighted_degree"), ROBUSTNESS_STEP)
    return 0.5 * (robustness_at(rnd, ROBUSTNESS_FRACTION) + robustness_at(wdeg, ROBUSTNESS_FRACTION))


def sample_terminals(n, seed):
    """Disjoint ``(sources, sinks)`` drawn from ``floor(0.4 n)`` sampled nodes."""
    rng = np.random.default_rng(seed)
    m = int(math.floor(SAMPLE_FRACTION * n))
    picked = rng.choice(n, size=m, replace=False).tolist()
    half = (m + 1) // 2
    return picked[:half], picked[half:]


def pair_path_weights(adj, s, t, k=K_PATHS, fill="worst"):
    """Weights of the ``k`` lightest loopless paths, padded when fewer exist.

    ``fill="worst"`` repeats the heaviest path found; ``fill="truncate"``
    returns only the paths that exist.
    """
    weights = [w for w, _ in k_shortest_paths(adj, s, t, k)]
    if fill == "worst" and weights:
        weights += [max(weights)] * (k - len(weights))
    elif fill not in ("worst", "truncate"):
        raise ValueError("fill must be 'worst' or 'truncate'")
    return weights


def redundancy(g: GridGraph, seed: int = 0, k: int = K_PATHS, fill: str = "worst") -> float:
    """Total weight of the ``k`` lightest paths over sampled pairs, over WCPL."""
    _require_connected(g)
    if g.order < 5:
        raise GridError("redundancy needs at least 5 nodes")
    adj = g.neighbors()
    sources, sinks = sample_terminals(g.order, seed)
    total = 0.0
    for s in sources:
        for t in sinks:
            total += sum(pair_path_weights(adj, s, t, k, fill))
    return total / weighted_cpl(g)


def current_graph(g: GridGraph) -> GridGraph:
    missing = [(a, b) for a, b, _, c in g.edges() if c is None]
    if missing:
        raise MissingCurrentError(missing)
    return g.with_weights(g.currents)


def capacity(g: GridGraph) -> float:
    """WCPL with maximum-current weights, over the mean maximum current."""
    gc = current_graph(g)
    return weighted_cpl(gc) / float(gc.weights.mean())


def alpha(g: GridGraph) -> float:
    return line_losses(g) + substation_losses(g)


def _beta(red, rob, cap):
    if not rob > 0:
        raise ValidationError("robustness is 0: network fully disrupted")
    if not cap > 1 + CAP_TOL:
        raise ValidationError(f"capacity {cap:.6g} <= 1 makes ln(capacity) nonpositive")
    return red / (rob * math.log(cap))


def beta(g: GridGraph, seed: int = 0) -> float:
    cap = capacity(g)
    if not cap > 1 + CAP_TOL:
        raise ValidationError(f"capacity {cap:.6g} <= 1 makes ln(capacity) nonpositive")
    return _beta(redundancy(g, seed), robustness(g, seed), cap)


@dataclass
class CostParams:
    l_line: float
    l_substation: float
    rob: float
    red: float
    cap: float
    alpha: float
    beta: float

    def to_dict(self):
        return asdict(self)


def cost_params(g: GridGraph, seed: int = 0) -> CostParams:
    """All five constituents plus ``alpha`` and ``beta`` for one network."""
    cap = capacity(g)
    l_line = line_losses(g)
    l_sub = substation_losses(g)
    rob = robustness(g, seed)
    red = redundancy(g, seed)
    return CostParams(l_line, l_sub, rob, red, cap, l_line + l_sub, _beta(red, rob, cap))


# -- price surface -------------------------------------------------------
@dataclass
class PriceSurface:
    """``price = base * (1 + (alpha/alpha_ref)**2 + (beta/beta_ref)**2)`` on a grid."""

    alpha: np.ndarray
    beta: np.ndarray
    price: np.ndarray  # shape (len(alpha), len(beta))
    base: float
    alpha_ref: float
    beta_ref: float
    markers: list = field(default_factory=list)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "beta", "price"])
        for i, a in enumerate(self.alpha):
            for j, b in enumerate(self.beta):
                w.writerow([repr(float(a)), repr(float(b)), repr(float(self.price[i, j]))])
        return buf.getvalue()

    def markers_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["network_id", "alpha", "beta"])
        for nid, a, b in self.markers:
            w.writerow([nid, repr(float(a)), repr(float(b))])
        return buf.getvalue()


def price(alpha_value, beta_value, base=1.0, alpha_ref=1.0, beta_ref=1.0):
    return base * (1.0 + (alpha_value / alpha_ref) ** 2 + (beta_value / beta_ref) ** 2)


def price_surface(alpha_range, beta_range, base=1.0, refs=(1.0, 1.0), markers=()) -> PriceSurface:
    """Quadratic price over an (alpha, beta) grid.

    ``markers`` is an iterable of ``(network_id, alpha, beta)`` kept verbatim
    for plotting the analysed networks on top of the surface.
    """
    a = np.asarray(alpha_range, dtype=float)
    b = np.asarray(beta_range, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValidationError("alpha and beta ranges must be nonempty")
    a_ref, b_ref = refs
    if not (a_ref > 0 and b_ref > 0):
        raise ValidationError("reference scales must be positive")
    P = price(a[:, None], b[None, :], base, a_ref, b_ref)
    return PriceSurface(a, b, P, float(base), float(a_ref), float(b_ref), [tuple(m) for m in markers])
