"""Shortest-path and clustering metrics of a single connected grid component."""

from __future__ import annotations

import heapq
from dataclasses import asdict, dataclass

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .errors import DisconnectedGraphError, EmptyGraphError, GridError, ValidationError
from .grid_model import GridGraph

_HOP_CHUNK = 256


def _require_connected(g: GridGraph, min_order=2):
    if g.order == 0:
        raise EmptyGraphError("graph is empty")
    if g.order < min_order:
        raise GridError(f"need at least {min_order} nodes, graph has {g.order}")
    ncomp = g.component_labels()[0]
    if ncomp != 1:
        raise DisconnectedGraphError(ncomp)


def dijkstra_fewest_hops(adj, source):
    """Minimum-weight distances from ``source``; ties go to the fewest hops.

    Parameters
    ----------
    adj : list of dict
        Collapsed adjacency as returned by :meth:`GridGraph.neighbors`.

    Returns
    -------
    dist, hops, pred : lists
        ``dist[v]`` is ``inf`` and ``hops[v]`` is ``-1`` for unreachable nodes.
    """
    n = len(adj)
    inf = float("inf")
    dist = [inf] * n
    hops = [-1] * n
    pred = [-1] * n
    dist[source] = 0.0
    hops[source] = 0
    heap = [(0.0, 0, source)]
    done = [False] * n
    while heap:
        d, h, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adj[u].items():
            if done[v]:
                continue
            nd = d + w
            nh = h + 1
            dv = dist[v]
            if nd < dv or (nd == dv and nh < hops[v]):
                dist[v] = nd
                hops[v] = nh
                pred[v] = u
                heapq.heappush(heap, (nd, nh, v))
    return dist, hops, pred


@dataclass(frozen=True)
class PathSummary:
    """Per-source sums over all other nodes.

    ``hop_sum[v]``: unweighted hop distances; ``wdist_sum[v]``: minimum-weight
    distances; ``whop_sum[v]``: hop counts of those minimum-weight paths.
    """

    hop_sum: np.ndarray
    wdist_sum: np.ndarray
    whop_sum: np.ndarray


def hop_distances(g: GridGraph, sources=None) -> np.ndarray:
    """Unweighted hop-count distance rows for ``sources`` (all nodes by default)."""
    A = g.adjacency_matrix()
    return shortest_path(A, method="D", directed=False, unweighted=True, indices=sources)


def _hop_sum(g: GridGraph) -> np.ndarray:
    cached = g._cache.get("hop_sum")
    if cached is None:
        _require_connected(g)
        n = g.order
        cached = np.zeros(n)
        for start in range(0, n, _HOP_CHUNK):
            rows = hop_distances(g, np.arange(start, min(n, start + _HOP_CHUNK)))
            cached[start:start + rows.shape[0]] = rows.sum(axis=1)
        cached.setflags(write=False)
        g._cache["hop_sum"] = cached
    return cached


def _weighted_sums(g: GridGraph):
    cached = g._cache.get("weighted_sums")
    if cached is None:
        _require_connected(g)
        n = g.order
        adj = g.neighbors()
        wdist_sum = np.zeros(n)
        whop_sum = np.zeros(n)
        for s in range(n):
            dist, hops, _ = dijkstra_fewest_hops(adj, s)
            wdist_sum[s] = sum(dist)
            whop_sum[s] = sum(hops)
        wdist_sum.setflags(write=False)
        whop_sum.setflags(write=False)
        cached = g._cache["weighted_sums"] = (wdist_sum, whop_sum)
    return cached


def path_summary(g: GridGraph) -> PathSummary:
    """All-pairs shortest-path sums for a connected graph (cached on ``g``)."""
    return PathSummary(_hop_sum(g), *_weighted_sums(g))


def _median(values) -> float:
    # numpy median averages the two central values for even counts
    return float(np.median(values))


def average_path_length(g: GridGraph) -> float:
    """Mean hop distance over ordered pairs, ``sum d(i,j) / (N (N-1))``."""
    n = g.order
    return float(_hop_sum(g).sum() / (n * (n - 1)))


def characteristic_path_length(g: GridGraph) -> float:
    """Median over vertices of the mean hop distance to every other vertex."""
    return _median(_hop_sum(g) / (g.order - 1))


def weighted_cpl(g: GridGraph) -> float:
    """Median over vertices of the mean minimum-weight distance to the others."""
    return _median(_weighted_sums(g)[0] / (g.order - 1))


def clustering_coefficient(g: GridGraph) -> float:
    """Average local clustering; vertices of degree < 2 count as 0."""
    if g.order == 0:
        return 0.0
    A = g.adjacency_matrix()
    k = np.asarray(A.sum(axis=1)).ravel()
    tri = np.asarray((A @ A).multiply(A).sum(axis=1)).ravel() / 2.0
    pairs = k * (k - 1) / 2.0
    local = np.divide(tri, pairs, out=np.zeros_like(tri), where=pairs > 0)
    return float(local.mean())


def local_clustering(g: GridGraph) -> np.ndarray:
    A = g.adjacency_matrix()
    k = np.asarray(A.sum(axis=1)).ravel()
    tri = np.asarray((A @ A).multiply(A).sum(axis=1)).ravel() / 2.0
    pairs = k * (k - 1) / 2.0
    return np.divide(tri, pairs, out=np.zeros_like(tri), where=pairs > 0)


def edge_average_weight(g: GridGraph) -> float:
    if g.size == 0:
        return 0.0
    return float(g.weights.mean())


def normalized_wcpl(wcpl: float, edge_avg_weight: float) -> float:
    if not edge_avg_weight > 0:
        raise ValidationError("average edge weight must be positive")
    return wcpl / edge_avg_weight


def weighted_degree(g: GridGraph, v) -> float:
    """Sum of the weights of all cables incident to ``v``."""
    return float(g.weighted_degrees()[g.index(v)])


def traversed_nodes_increase(g: GridGraph) -> float:
    """Percentage increase of hops along minimum-weight vs. fewest-hop paths.

    ``100 * (mean weighted-path hops - mean shortest hops) / mean shortest hops``
    over all node pairs.
    """
    s = path_summary(g)
    hu = s.hop_sum.sum()
    hw = s.whop_sum.sum()
    return float(100.0 * (hw - hu) / hu)


def mean_interior_nodes(g: GridGraph) -> float:
    """Average number of interior nodes on the minimum-weight path of a pair."""
    s = path_summary(g)
    n = g.order
    return float(s.whop_sum.sum() / (n * (n - 1)) - 1.0)


@dataclass
class MetricsReport:
    component_id: int
    order: int
    size: int
    avg_degree: float
    apl: float
    cpl: float
    cc: float
    wcpl: float
    edge_avg_weight: float
    nwcpl: float
    avg_traversed_increase_pct: float

    def to_dict(self):
        return asdict(self)


def metrics_report(g: GridGraph, component_id: int = 0) -> MetricsReport:
    """All scalar metrics of one connected component.

    Single-node components report zeros for every path metric.
    """
    if g.order == 0:
        raise EmptyGraphError("graph is empty")
    avg_deg = 2.0 * g.size / g.order
    eaw = edge_average_weight(g)
    if g.order < 2:
        return MetricsReport(component_id, g.order, g.size, avg_deg, 0.0, 0.0, 0.0, 0.0, eaw, 0.0, 0.0)
    wcpl = weighted_cpl(g)
    return MetricsReport(
        component_id=component_id,
        order=g.order,
        size=g.size,
        avg_degree=avg_deg,
        apl=average_path_length(g),
        cpl=characteristic_path_length(g),
        cc=clustering_coefficient(g),
        wcpl=wcpl,
        edge_avg_weight=eaw,
        nwcpl=normalized_wcpl(wcpl, eaw),
        avg_traversed_increase_pct=traversed_nodes_increase(g),
    )
