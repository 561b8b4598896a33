"""Betweenness and eigenvector centrality."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DisconnectedGraphError, EmptyGraphError
from .grid_model import GridGraph

EIG_TOL = 1e-10
EIG_MAX_ITER = 10000


@dataclass
class BetweennessVector:
    values: np.ndarray
    weighted_paths: bool
    normalized: bool = True
    node_ids: tuple = ()

    def __getitem__(self, node_id):
        return float(self.values[self.node_ids.index(node_id)])

    def as_dict(self):
        return {nid: float(v) for nid, v in zip(self.node_ids, self.values)}


def _sssp_unweighted(adj, s):
    n = len(adj)
    order = []
    preds = [[] for _ in range(n)]
    sigma = [0] * n
    dist = [-1] * n
    sigma[s] = 1
    dist[s] = 0
    q = deque([s])
    while q:
        v = q.popleft()
        order.append(v)
        dv = dist[v] + 1
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv
                q.append(w)
            if dist[w] == dv:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, preds, sigma


def _sssp_weighted(adj, s):
    n = len(adj)
    inf = float("inf")
    order = []
    preds = [[] for _ in range(n)]
    sigma = [0] * n
    dist = [inf] * n
    sigma[s] = 1
    dist[s] = 0.0
    done = [False] * n
    heap = [(0.0, s, s)]
    while heap:
        d, pred, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        order.append(v)
        for w, wt in adj[v].items():
            nd = d + wt
            if nd < dist[w]:
                dist[w] = nd
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (nd, v, w))
            elif nd == dist[w] and not done[w]:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, preds, sigma


def brandes(adj, weighted=False, normalized=True) -> np.ndarray:
    """Vertex betweenness on an undirected collapsed adjacency list.

    Works on disconnected graphs (unreachable pairs contribute nothing).
    With ``normalized`` each pair distributes one unit of credit over its
    shortest paths; otherwise every shortest path through ``v`` counts 1.
    Endpoints never receive credit and each unordered pair counts once.
    """
    n = len(adj)
    cb = [0.0] * n
    sssp = _sssp_weighted if weighted else _sssp_unweighted
    for s in range(n):
        order, preds, sigma = sssp(adj, s)
        acc = [0.0] * n
        if normalized:
            while order:
                w = order.pop()
                coeff = (1.0 + acc[w]) / sigma[w]
                for v in preds[w]:
                    acc[v] += sigma[v] * coeff
                if w != s:
                    cb[w] += acc[w]
        else:
            # acc[v]: number of DAG paths from v to later targets
            while order:
                w = order.pop()
                for v in preds[w]:
                    acc[v] += 1.0 + acc[w]
                if w != s:
                    cb[w] += sigma[w] * acc[w]
    return np.asarray(cb) / 2.0


def betweenness(g: GridGraph, use_weights: bool = False, normalized: bool = True) -> BetweennessVector:
    """Shortest-path betweenness of every node of a connected graph.

    ``use_weights`` selects minimum-resistance paths instead of fewest-hop
    paths.  ``normalized=False`` returns the raw number of shortest paths
    through each node instead of the fractional path share.
    """
    if g.order == 0:
        raise EmptyGraphError("graph is empty")
    if not g.is_connected():
        raise DisconnectedGraphError(g.component_labels()[0])
    key = ("btw", use_weights, normalized)
    if key not in g._cache:
        vals = brandes(g.neighbors(), weighted=use_weights, normalized=normalized)
        vals.setflags(write=False)
        g._cache[key] = vals
    return BetweennessVector(g._cache[key], use_weights, normalized, g.node_ids)


@dataclass
class CentralityRanking:
    """Nodes ordered by eigenvector centrality, highest first."""

    entries: list
    weighted: bool
    scores: np.ndarray = field(repr=False, default=None)
    eigenvalue: float = float("nan")
    iterations: int = 0

    @property
    def order(self):
        return [nid for _, nid, _ in self.entries]

    def top(self, k=10):
        return self.entries[:k]


def rank_by_score(scores, node_ids, digits=12):
    """``[(rank, id, score)]`` by descending score; near-equal scores by index."""
    keys = np.round(np.asarray(scores, dtype=float), digits)
    idx = sorted(range(len(keys)), key=lambda i: (-keys[i], i))
    return [(r + 1, node_ids[i], float(scores[i])) for r, i in enumerate(idx)]


def eigenvector_centrality(g: GridGraph, use_weights: bool = False,
                           tol: float = EIG_TOL, max_iter: int = EIG_MAX_ITER) -> CentralityRanking:
    """Rank nodes by the dominant eigenvector of the (weighted) adjacency matrix.

    Power iteration on ``A + c I`` with ``c`` half the largest row sum; the
    shift leaves eigenvectors unchanged but removes the ``-lambda_max``
    eigenvalue of bipartite graphs (trees) from competing with the dominant
    one.  The returned vector has unit Euclidean norm and positive entries.

    Raises
    ------
    ConvergenceError
        If the successive-iterate difference stays above ``tol``.
    """
    if g.order == 0:
        raise EmptyGraphError("graph is empty")
    if not g.is_connected():
        raise DisconnectedGraphError(g.component_labels()[0])
    n = g.order
    if n == 1:
        return CentralityRanking([(1, g.node_ids[0], 1.0)], use_weights, np.ones(1), 0.0, 0)
    A = g.adjacency_matrix(weighted=use_weights)
    shift = 0.5 * float(np.asarray(A.sum(axis=1)).max())
    x = np.full(n, 1.0 / np.sqrt(n))
    diff = np.inf
    for it in range(1, max_iter + 1):
        y = A @ x + shift * x
        y /= np.linalg.norm(y)
        diff = float(np.abs(y - x).max())
        x = y
        if diff < tol:
            break
    else:
        raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations", diff)
    nz = np.flatnonzero(np.abs(x) > 0)
    if x[nz[0]] < 0:
        x = -x
    if np.any(x <= 0):
        raise ConvergenceError("dominant eigenvector is not strictly positive", diff)
    lam = float(x @ (A @ x))
    x.setflags(write=False)
    return CentralityRanking(rank_by_score(x, g.node_ids), use_weights, x, lam, it)
