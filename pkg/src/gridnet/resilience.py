"""Node-removal fault-tolerance simulation.

Nodes are removed in batches of ``ceil(step * N0)`` and after each batch
the order of the largest connected component is recorded as a fraction of
the original order ``N0``.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc_labels

from .centrality import brandes
from .errors import EmptyGraphError, ValidationError
from .grid_model import GridGraph

POLICIES = ("random", "degree", "betweenness", "weighted_degree")


@dataclass(frozen=True)
class RemovalPolicy:
    kind: str
    seed: int | None = None
    recompute: bool = True

    def __post_init__(self):
        if self.kind not in POLICIES:
            raise ValidationError(f"unknown removal policy {self.kind!r}; choose from {POLICIES}")
        if (self.kind == "random") != (self.seed is not None):
            raise ValidationError("a seed is required for, and only for, the random policy")

    @property
    def name(self):
        return self.kind


@dataclass
class RemovalTrace:
    f: np.ndarray
    s: np.ndarray
    policy: RemovalPolicy
    original_order: int
    removed: list = field(default_factory=list, repr=False)

    def points(self):
        return list(zip(self.f.tolist(), self.s.tolist()))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["f", "s"])
        for f, s in zip(self.f, self.s):
            w.writerow([repr(float(f)), repr(float(s))])
        return buf.getvalue()

    def to_dict(self):
        return {
            "policy": self.policy.kind,
            "seed": self.policy.seed,
            "recompute": self.policy.recompute,
            "original_order": self.original_order,
            "f": self.f.tolist(),
            "s": self.s.tolist(),
        }


def batch_size(step, n0):
    # guard against 0.07 * 100 = 7.000000000000001 style round-up
    return max(1, math.ceil(step * n0 - 1e-9))


class _Survivors:
    """Mutable view of the collapsed graph restricted to surviving nodes."""

    def __init__(self, g: GridGraph):
        self.g = g
        self.alive = np.ones(g.order, dtype=bool)
        self.adj = [dict(d) for d in g.neighbors()]
        self.cables = [dict() for _ in range(g.order)]  # nbr -> (count, weight sum)
        for a, b, w in zip(g.edge_u.tolist(), g.edge_v.tolist(), g.weights.tolist()):
            c, s = self.cables[a].get(b, (0, 0.0))
            self.cables[a][b] = (c + 1, s + w)
            self.cables[b][a] = (c + 1, s + w)

    def remove(self, nodes):
        for v in nodes:
            self.alive[v] = False
            for u in self.adj[v]:
                del self.adj[u][v]
                del self.cables[u][v]
            self.adj[v] = {}
            self.cables[v] = {}

    def lcc(self):
        idx = np.flatnonzero(self.alive)
        if len(idx) == 0:
            return 0
        rows, cols = [], []
        pos = {v: i for i, v in enumerate(idx.tolist())}
        for v in idx.tolist():
            for u in self.adj[v]:
                rows.append(pos[v])
                cols.append(pos[u])
        A = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(idx), len(idx)))
        _, labels = _cc_labels(A, directed=False)
        return int(np.bincount(labels).max())

    def metric(self, kind):
        if kind == "degree":
            return np.array([sum(c for c, _ in d.values()) for d in self.cables], dtype=float)
        if kind == "weighted_degree":
            return np.array([sum(s for _, s in d.values()) for d in self.cables], dtype=float)
        if kind == "betweenness":
            # dead nodes are isolated, so whole-graph Brandes equals the per-component sum
            return brandes(self.adj)
        raise ValueError(kind)


def _ranked(metric, alive):
    idx = np.flatnonzero(alive)
    # highest metric first; equal values by ascending node index
    order = np.lexsort((idx, -metric[idx]))
    return idx[order]


def simulate_removal(g: GridGraph, policy: RemovalPolicy, step: float = 0.05) -> RemovalTrace:
    """Remove nodes batch by batch until none remain.

    Returns the trace of ``(f, s)`` with ``f`` the removed fraction and ``s``
    the largest-component order, both relative to the original order.  The
    first point is ``(0, s0)``.
    """
    if g.order == 0:
        raise EmptyGraphError("cannot simulate removal on an empty graph")
    if not 0 < step <= 1:
        raise ValidationError("step must lie in (0, 1]")
    n0 = g.order
    k = batch_size(step, n0)
    state = _Survivors(g)
    fs, ss, removed = [0.0], [state.lcc() / n0], []
    if policy.kind == "random":
        rng = np.random.default_rng(policy.seed)
        sequence = rng.permutation(n0)
    elif not policy.recompute:
        sequence = _ranked(state.metric(policy.kind), state.alive)
    gone = 0
    while gone < n0:
        take = min(k, n0 - gone)
        if policy.kind != "random" and policy.recompute:
            batch = _ranked(state.metric(policy.kind), state.alive)[:take]
        else:
            batch = sequence[gone:gone + take]
        state.remove(batch.tolist())
        removed.append(sorted(batch.tolist()))
        gone += take
        fs.append(gone / n0)
        ss.append(state.lcc() / n0)
    return RemovalTrace(np.array(fs), np.array(ss), policy, n0, removed)


def robustness_at(trace: RemovalTrace, f: float) -> float:
    """``s`` at the largest recorded fraction not exceeding ``f``."""
    if len(trace.f) == 0:
        raise ValidationError("empty trace")
    i = int(np.searchsorted(trace.f, f + 1e-12, side="right")) - 1
    return float(trace.s[max(i, 0)])


def _run(args):
    g, policy, step = args
    return simulate_removal(g, policy, step)


def _workers():
    try:
        return max(1, int(os.environ.get("GRIDNET_THREADS", "1")))
    except ValueError:
        return 1


def compare_policies(g: GridGraph, policies, step=0.05, trials=1, workers=None) -> list:
    """One trace per policy; random policies average ``s`` over ``trials`` seeds.

    Random trial ``t`` of a policy with seed ``s`` uses seed ``s + t``.  The
    averaged trace keeps the policy's base seed.  ``workers`` (default:
    ``$GRIDNET_THREADS`` or 1) only changes speed, never the result.
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    jobs, slots = [], []
    for p in policies:
        if isinstance(p, str):
            p = RemovalPolicy(p, seed=0 if p == "random" else None)
        if p.kind == "random":
            slots.append((p, len(jobs), trials))
            jobs.extend((g, RemovalPolicy("random", p.seed + t, p.recompute), step) for t in range(trials))
        else:
            slots.append((p, len(jobs), 1))
            jobs.append((g, p, step))
    workers = _workers() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run, jobs))
    else:
        results = [_run(j) for j in jobs]
    out = []
    for p, start, count in slots:
        chunk = results[start:start + count]
        if count == 1 and p.kind != "random":
            out.append(chunk[0])
            continue
        s = np.mean([t.s for t in chunk], axis=0)
        out.append(RemovalTrace(chunk[0].f.copy(), s, p, g.order))
    return out
