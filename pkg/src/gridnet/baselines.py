"""Matched random-graph baselines and the small-world test."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InfeasibleError
from .grid_model import GridGraph

# "much larger than" operationalised as a fixed factor
WS_ORDER_FACTOR = 10.0
WS_DEGREE_FACTOR = 2.0

# uniform draws tried before falling back to the tree-first construction
REJECTION_ATTEMPTS = 32


def _random_tree(order, rng):
    """Uniform random labelled tree via a random Pruefer sequence."""
    if order == 1:
        return []
    if order == 2:
        return [(0, 1)]
    seq = rng.integers(0, order, size=order - 2).tolist()
    degree = [1] * order
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(order) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((a, b))
    return edges


def _pair_from_index(k, n):
    """Map linear indices over the upper triangle (row-major) to pairs ``(i, j)``."""
    k = np.asarray(k, dtype=np.int64)
    i = n - 2 - np.floor(np.sqrt(-8 * k + 4 * n * (n - 1) - 7) / 2.0 - 0.5).astype(np.int64)
    j = k + i + 1 - n * (n - 1) // 2 + (n - i) * (n - i - 1) // 2
    return i, j


def _uniform_connected(order, size, rng, attempts):
    """Uniform G(order, size) conditioned on connectivity, or None after ``attempts`` misses."""
    total = order * (order - 1) // 2
    for _ in range(attempts):
        i, j = _pair_from_index(np.sort(rng.choice(total, size=size, replace=False)), order)
        A = coo_matrix((np.ones(size), (i, j)), shape=(order, order))
        if connected_components(A, directed=False)[0] == 1:
            return list(zip(i.tolist(), j.tolist()))
    return None


def _tree_first(order, size, rng):
    edges = _random_tree(order, rng)
    present = set(edges)
    max_size = order * (order - 1) // 2
    extra = size - len(edges)
    if extra > 0:
        if extra * 2 > max_size - len(edges):
            # dense: choose directly among the remaining pairs
            free = [(i, j) for i in range(order) for j in range(i + 1, order) if (i, j) not in present]
            pick = rng.choice(len(free), size=extra, replace=False)
            edges.extend(free[k] for k in sorted(pick.tolist()))
        else:
            while extra:
                i, j = rng.integers(0, order, size=2).tolist()
                if i == j:
                    continue
                e = (min(i, j), max(i, j))
                if e in present:
                    continue
                present.add(e)
                edges.append(e)
                extra -= 1
    return edges


def random_connected_pairs(order, size, rng, attempts=REJECTION_ATTEMPTS):
    """Edge list of a connected simple graph with ``order`` nodes and ``size`` edges.

    Up to ``attempts`` uniform G(N, M) draws are tried and kept only if
    connected, which is exactly uniform over connected graphs. When none
    succeeds (the sparse, tree-like regime) a uniform random spanning tree is
    drawn and the remaining edges are added uniformly among absent pairs.
    That fallback always terminates but slightly under-represents cycles.
    """
    order, size = int(order), int(size)
    max_size = order * (order - 1) // 2
    if order < 1:
        raise InfeasibleError("order must be at least 1")
    if size < order - 1:
        raise InfeasibleError(f"size {size} < order-1 = {order - 1}: graph cannot be connected")
    if size > max_size:
        raise InfeasibleError(f"size {size} exceeds C({order},2) = {max_size}")
    if order > 2 and size > order - 1:
        edges = _uniform_connected(order, size, rng, attempts)
        if edges is not None:
            return edges
    return _tree_first(order, size, rng)


def random_connected_graph(order, size, seed) -> GridGraph:
    """Connected random graph with exact order and size and unit weights.

    See :func:`random_connected_pairs` for the sampling procedure.
    """
    rng = np.random.default_rng(seed)
    pairs = random_connected_pairs(order, size, rng)
    return GridGraph([f"r{i}" for i in range(order)], pairs, np.ones(len(pairs)))


@dataclass
class BaselineMetrics:
    apl: float
    cpl: float
    cc: float
    apl_sd: float = 0.0
    cpl_sd: float = 0.0
    cc_sd: float = 0.0
    trials: int = 1


def baseline_metrics(order, size, seed, trials=1) -> BaselineMetrics:
    """Mean APL, CPL and clustering coefficient over ``trials`` random graphs.

    Trial ``t`` uses seed ``seed + t``.
    """
    from .path_metrics import average_path_length, characteristic_path_length, clustering_coefficient

    if trials < 1:
        raise ValueError("trials must be >= 1")
    vals = []
    for t in range(trials):
        g = random_connected_graph(order, size, seed + t)
        if order < 2:
            vals.append((0.0, 0.0, 0.0))
            continue
        vals.append((average_path_length(g), characteristic_path_length(g), clustering_coefficient(g)))
    arr = np.array(vals)
    sd = arr.std(axis=0, ddof=1) if trials > 1 else np.zeros(3)
    m = arr.mean(axis=0)
    return BaselineMetrics(
        float(m[0]), float(m[1]), float(m[2]), float(sd[0]), float(sd[1]), float(sd[2]), trials
    )


@dataclass
class SmallWorldVerdict:
    cpl_ratio: float
    cc_ratio: float | None
    cc_ratio_undefined: bool
    ws_condition_holds: bool
    is_small_world: bool


def ws_condition(order, avg_degree) -> bool:
    """``N >> <k> >> ln N >> 1`` with fixed factors."""
    if order < 2 or avg_degree <= 0:
        return False
    ln_n = math.log(order)
    return order > WS_ORDER_FACTOR * avg_degree and avg_degree > WS_DEGREE_FACTOR * ln_n and ln_n > 1


def _get(metrics, name):
    return metrics[name] if isinstance(metrics, dict) else getattr(metrics, name)


def small_world_test(sample_metrics, baseline, cpl_tolerance=2.0, cc_dominance=4.0) -> SmallWorldVerdict:
    """Compare a sample against its matched random baseline.

    ``sample_metrics`` and ``baseline`` are mappings or objects with ``cpl``
    and ``cc`` attributes; ``sample_metrics`` may also carry ``order`` and
    ``avg_degree`` for the Watts-Strogatz size condition.
    """
    cpl_s, cc_s = _get(sample_metrics, "cpl"), _get(sample_metrics, "cc")
    cpl_r, cc_r = _get(baseline, "cpl"), _get(baseline, "cc")
    if not cpl_r > 0:
        raise ValueError("baseline CPL must be positive")
    cpl_ratio = cpl_s / cpl_r
    undefined = not cc_r > 0
    cc_ratio = None if undefined else cc_s / cc_r
    try:
        ws = ws_condition(_get(sample_metrics, "order"), _get(sample_metrics, "avg_degree"))
    except (KeyError, AttributeError):
        ws = False
    verdict = (not undefined) and cpl_ratio <= cpl_tolerance and cc_ratio >= cc_dominance
    return SmallWorldVerdict(cpl_ratio, cc_ratio, undefined, ws, verdict)
