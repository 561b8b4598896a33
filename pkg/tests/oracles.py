"""Brute-force reference implementations used only by the tests.

Everything here works on plain edge lists ``[(u, v, w), ...]`` over nodes
``0..n-1`` and shares no code with the package.
"""

import itertools
import math
import statistics
from collections import deque

INF = math.inf


def collapse(n, edges):
    best = {}
    for u, v, w in edges:
        key = (min(u, v), max(u, v))
        best[key] = min(w, best.get(key, INF))
    return best


def floyd_warshall(n, edges, weighted=True):
    """All-pairs (distance, hops) minimised lexicographically."""
    d = [[(INF, INF)] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = (0.0, 0)
    for (u, v), w in collapse(n, edges).items():
        c = (w, 1) if weighted else (1, 1)
        d[u][v] = min(d[u][v], c)
        d[v][u] = min(d[v][u], c)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik[0] == INF:
                continue
            di = d[i]
            for j in range(n):
                cand = (dik[0] + dk[j][0], dik[1] + dk[j][1])
                if cand < di[j]:
                    di[j] = cand
    return d


def bfs_hops(n, edges):
    adj = [set() for _ in range(n)]
    for u, v, _ in edges:
        adj[u].add(v)
        adj[v].add(u)
    out = []
    for s in range(n):
        dist = [INF] * n
        dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if dist[y] == INF:
                    dist[y] = dist[x] + 1
                    q.append(y)
        out.append(dist)
    return out


def apl(n, edges):
    h = bfs_hops(n, edges)
    return sum(h[i][j] for i in range(n) for j in range(n) if i != j) / (n * (n - 1))


def cpl(n, edges):
    h = bfs_hops(n, edges)
    return statistics.median(sum(h[i][j] for j in range(n) if j != i) / (n - 1) for i in range(n))


def wcpl(n, edges):
    d = floyd_warshall(n, edges)
    return statistics.median(sum(d[i][j][0] for j in range(n) if j != i) / (n - 1) for i in range(n))


def weighted_path_hops(n, edges):
    """Hop counts of minimum-weight, fewest-hop paths for every pair."""
    d = floyd_warshall(n, edges)
    return [[d[i][j][1] for j in range(n)] for i in range(n)]


def traversed_increase(n, edges):
    h = bfs_hops(n, edges)
    hw = weighted_path_hops(n, edges)
    pairs = list(itertools.combinations(range(n), 2))
    mu = sum(h[i][j] for i, j in pairs) / len(pairs)
    mw = sum(hw[i][j] for i, j in pairs) / len(pairs)
    return 100.0 * (mw - mu) / mu


def clustering(n, edges):
    adj = [set() for _ in range(n)]
    for u, v, _ in edges:
        adj[u].add(v)
        adj[v].add(u)
    total = 0.0
    for v in range(n):
        k = len(adj[v])
        if k < 2:
            continue
        links = sum(1 for a, b in itertools.combinations(sorted(adj[v]), 2) if b in adj[a])
        total += links / (k * (k - 1) / 2)
    return total / n


def simple_paths(n, edges, s, t):
    """Every loopless path s -> t on the collapsed graph as (weight, path)."""
    w = collapse(n, edges)
    adj = [dict() for _ in range(n)]
    for (u, v), x in w.items():
        adj[u][v] = x
        adj[v][u] = x
    out = []

    def dfs(path, weight, seen):
        u = path[-1]
        if u == t:
            out.append((weight, tuple(path)))
            return
        for v, x in adj[u].items():
            if v not in seen:
                seen.add(v)
                path.append(v)
                dfs(path, weight + x, seen)
                path.pop()
                seen.discard(v)

    dfs([s], 0.0, {s})
    return sorted(out)


def all_shortest_paths(n, edges, s, t, weighted):
    paths = simple_paths(n, edges, s, t)
    if not paths:
        return []
    key = (lambda p: p[0]) if weighted else (lambda p: len(p[1]))
    best = min(key(p) for p in paths)
    return [p[1] for p in paths if key(p) == best]


def naive_betweenness(n, edges, weighted=False, normalized=True):
    b = [0.0] * n
    for s, t in itertools.combinations(range(n), 2):
        paths = all_shortest_paths(n, edges, s, t, weighted)
        if not paths:
            continue
        for v in range(n):
            if v in (s, t):
                continue
            through = sum(1 for p in paths if v in p)
            b[v] += through / len(paths) if normalized else through
    return b


def lcc(n, edges, alive):
    adj = [set() for _ in range(n)]
    for u, v, _ in edges:
        if alive[u] and alive[v]:
            adj[u].add(v)
            adj[v].add(u)
    seen, best = set(), 0
    for s in range(n):
        if not alive[s] or s in seen:
            continue
        comp, stack = 0, [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        best = max(best, comp)
    return best


def degree_removal_trace(n, edges, step_nodes):
    """Adaptive highest-degree removal; each batch ranked before it is removed."""
    alive = [True] * n
    trace = [(0.0, lcc(n, edges, alive) / n)]
    removed = 0
    while removed < n:
        deg = [0] * n
        for u, v, _ in edges:
            if alive[u] and alive[v]:
                deg[u] += 1
                deg[v] += 1
        cands = [v for v in range(n) if alive[v]]
        batch = sorted(cands, key=lambda v: (-deg[v], v))[: min(step_nodes, n - removed)]
        for v in batch:
            alive[v] = False
        removed += len(batch)
        trace.append((removed / n, lcc(n, edges, alive) / n))
    return trace
