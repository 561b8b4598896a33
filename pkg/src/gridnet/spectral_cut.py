"""Laplacian spectral bisection and critical-edge detection."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from .errors import ConvergenceError, DisconnectedGraphError, GridError
from .grid_model import GridGraph, connected_components

DENSE_LIMIT = 512
ZERO_TOL = 1e-12
RESIDUAL_TOL = 1e-8


def laplacian(g: GridGraph, sparse: bool = False):
    """Unweighted Laplacian ``L = D - A`` of the collapsed simple graph."""
    A = g.adjacency_matrix().astype(float)
    deg = np.asarray(A.sum(axis=1)).ravel()
    L = sp.diags(deg) - A
    return L.tocsr() if sparse else L.toarray()


def _fiedler_pair(g: GridGraph):
    n = g.order
    if n <= DENSE_LIMIT:
        vals, vecs = np.linalg.eigh(laplacian(g))
        return float(vals[1]), vecs[:, 1]
    L = laplacian(g, sparse=True)
    v0 = np.random.default_rng(0).standard_normal(n)
    try:
        vals, vecs = eigsh(L, k=2, sigma=-1e-3, which="LM", v0=v0)
    except Exception:  # factorisation trouble: fall back to the dense solver
        vals, vecs = np.linalg.eigh(L.toarray())
    order = np.argsort(vals)
    lam, vec = float(vals[order[1]]), vecs[:, order[1]]
    resid = float(np.abs(L @ vec - lam * vec).max())
    if resid >= RESIDUAL_TOL:
        vals, vecs = np.linalg.eigh(L.toarray())
        lam, vec = float(vals[1]), vecs[:, 1]
        resid = float(np.abs(L @ vec - lam * vec).max())
        if resid >= RESIDUAL_TOL:
            raise ConvergenceError("Fiedler vector residual too large", resid)
    return lam, vec


@dataclass
class Bisection:
    """One Fiedler split.  Node sets and edges use the original node ids."""

    side_a: list
    side_b: list
    critical_edges: list
    fiedler_value: float
    note: str = ""
    children: list = field(default_factory=list)

    @property
    def n_critical(self):
        return len(self.critical_edges)

    def walk(self, depth=1):
        """Yield ``(depth, bisection)`` for this node and all descendants."""
        yield depth, self
        for c in self.children:
            yield from c.walk(depth + 1)

    def to_dict(self):
        return {
            "side_a": list(self.side_a),
            "side_b": list(self.side_b),
            "critical_edges": [list(e) for e in self.critical_edges],
            "fiedler_value": self.fiedler_value,
            "note": self.note,
            "children": [c.to_dict() for c in self.children],
        }


def fiedler_bisect(g: GridGraph) -> Bisection:
    """Split a connected graph by the sign of its Fiedler vector.

    Components within ``ZERO_TOL`` of zero go, in index order, to the side
    that is currently smaller (``side_a`` on ties).  Every edge with one
    endpoint on each side is reported as critical.
    """
    if g.order < 2:
        raise GridError("bisection needs at least 2 nodes")
    if not g.is_connected():
        raise DisconnectedGraphError(g.component_labels()[0])
    lam, vec = _fiedler_pair(g)
    nz = np.flatnonzero(np.abs(vec) >= ZERO_TOL)
    if len(nz) and vec[nz[0]] < 0:
        vec = -vec
    in_a = vec >= ZERO_TOL
    in_b = vec <= -ZERO_TOL
    na, nb = int(in_a.sum()), int(in_b.sum())
    for i in np.flatnonzero(~in_a & ~in_b):
        if na <= nb:
            in_a[i] = True
            na += 1
        else:
            in_b[i] = True
            nb += 1
    ids = g.node_ids
    crossing = []
    seen = set()
    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        if in_a[u] != in_a[v]:
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            crossing.append((ids[key[0]], ids[key[1]]))
    side_a = [ids[i] for i in np.flatnonzero(in_a)]
    side_b = [ids[i] for i in np.flatnonzero(~in_a)]
    return Bisection(side_a, side_b, crossing, lam)


def _side_graph(g: GridGraph, side_ids):
    sub = g.subgraph(g.index(i) for i in side_ids)
    if sub.is_connected():
        return sub, ""
    comps = connected_components(sub)
    return comps[0], f"side disconnected into {len(comps)} parts; recursed into the largest"


def recursive_bisect(g: GridGraph, depth: int = 1) -> Bisection:
    """Apply :func:`fiedler_bisect` repeatedly, ``depth`` levels deep."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    root = fiedler_bisect(g)
    if depth > 1:
        for side in (root.side_a, root.side_b):
            sub, note = _side_graph(g, side)
            if sub.order < 2:
                continue
            child = recursive_bisect(sub, depth - 1)
            if note:
                child.note = (note + "; " + child.note) if child.note else note
            root.children.append(child)
    return root


def zero_eigenvalue_count(g: GridGraph, tol: float = 1e-9) -> int:
    vals = np.linalg.eigvalsh(laplacian(g))
    return int(np.sum(np.abs(vals) < tol))
