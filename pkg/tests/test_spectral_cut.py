import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import barbell_edges, complete_edges, cycle_edges, make_graph, path_edges, random_connected_edges
from gridnet.errors import DisconnectedGraphError
from gridnet.spectral_cut import (
    DENSE_LIMIT,
    fiedler_bisect,
    laplacian,
    recursive_bisect,
    zero_eigenvalue_count,
)


def ids(*nums):
    return [f"v{i}" for i in nums]


def crossing_removed_disconnects(g, b):
    n = g.order
    a = {g.index(x) for x in b.side_a}
    crit = {(g.index(x), g.index(y)) for x, y in b.critical_edges}
    crit |= {(y, x) for x, y in crit}
    kept = [(u, v, 1.0) for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()) if (u, v) not in crit]
    reach = {next(iter(a))}
    stack = list(reach)
    while stack:
        x = stack.pop()
        for u, v, _ in kept:
            for p, q in ((u, v), (v, u)):
                if p == x and q not in reach:
                    reach.add(q)
                    stack.append(q)
    return reach.isdisjoint({g.index(x) for x in b.side_b})


class TestLaplacian:
    def test_single_edge(self):
        np.testing.assert_array_equal(laplacian(make_graph(2, [(0, 1)])), [[1, -1], [-1, 1]])

    def test_triangle(self):
        L = laplacian(make_graph(3, complete_edges(3)))
        np.testing.assert_array_equal(np.diag(L), [2, 2, 2])
        assert np.all(L[~np.eye(3, dtype=bool)] == -1)

    def test_parallel_edges_ignored(self):
        L = laplacian(make_graph(2, [(0, 1), (0, 1, 3.0)]))
        np.testing.assert_array_equal(L, [[1, -1], [-1, 1]])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 25), st.integers(0, 10**6))
    def test_properties(self, n, seed):
        rng = random.Random(seed)
        e = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < 0.15]
        g = make_graph(n, e)
        L = laplacian(g)
        assert np.allclose(L @ np.ones(n), 0)
        assert np.array_equal(L, L.T)
        vals = np.linalg.eigvalsh(L)
        assert vals.min() > -1e-9
        assert zero_eigenvalue_count(g) == g.component_labels()[0]


class TestFiedler:
    def test_barbell(self):
        e = barbell_edges(3)
        # exhaustive oracle: minimum cut over all 3|3 splits is the bridge
        cuts = []
        for a in itertools.combinations(range(6), 3):
            cuts.append(sum(1 for u, v, _ in e if (u in a) != (v in a)))
        assert min(cuts) == 1
        b = fiedler_bisect(make_graph(6, e))
        assert {frozenset(b.side_a), frozenset(b.side_b)} == {frozenset(ids(0, 1, 2)), frozenset(ids(3, 4, 5))}
        assert b.critical_edges == [("v2", "v3")]

    def test_p4(self):
        L = laplacian(make_graph(4, path_edges(4)))
        vec = np.linalg.eigh(L)[1][:, 1]
        assert np.sign(vec[0]) == np.sign(vec[1]) != np.sign(vec[2]) == np.sign(vec[3])
        b = fiedler_bisect(make_graph(4, path_edges(4)))
        assert sorted([sorted(b.side_a), sorted(b.side_b)]) == [ids(0, 1), ids(2, 3)]
        assert b.n_critical == 1

    def test_four_cycle(self):
        g = make_graph(4, cycle_edges(4))
        b = fiedler_bisect(g)
        assert b.n_critical == 2
        assert len(b.side_a) + len(b.side_b) == 4 and b.side_a and b.side_b
        assert b.fiedler_value == pytest.approx(2.0)

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_barbell_family(self, k):
        b = fiedler_bisect(make_graph(2 * k, barbell_edges(k)))
        assert b.n_critical == 1

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            fiedler_bisect(make_graph(4, [(0, 1), (2, 3)]))

    def test_deterministic(self):
        g = make_graph(20, random_connected_edges(20, 8, random.Random(4)))
        assert fiedler_bisect(g) == fiedler_bisect(g)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 30), st.integers(0, 10**6))
    def test_invariants(self, n, seed):
        rng = random.Random(seed)
        g = make_graph(n, random_connected_edges(n, rng.randint(0, n), rng))
        b = fiedler_bisect(g)
        assert b.fiedler_value > 0
        assert set(b.side_a).isdisjoint(b.side_b)
        assert set(b.side_a) | set(b.side_b) == set(g.node_ids)
        assert b.side_a and b.side_b
        sa = set(b.side_a)
        for x, y in b.critical_edges:
            assert (x in sa) != (y in sa)
        assert crossing_removed_disconnects(g, b)

    def test_sparse_path_above_dense_limit(self):
        n = DENSE_LIMIT + 88
        rng = random.Random(9)
        g = make_graph(n, random_connected_edges(n, 40, rng))
        b = fiedler_bisect(g)
        L = laplacian(g)
        vals, vecs = np.linalg.eigh(L)
        assert b.fiedler_value == pytest.approx(vals[1], abs=1e-8)
        assert crossing_removed_disconnects(g, b)


class TestRecursive:
    def test_depth_one_equals_single(self):
        g = make_graph(6, barbell_edges(3))
        assert recursive_bisect(g, 1) == fiedler_bisect(g)

    def test_barbell_depth_two(self):
        root = recursive_bisect(make_graph(6, barbell_edges(3)), 2)
        assert root.n_critical == 1
        assert [c.n_critical for c in root.children] == [2, 2]

    def test_p8_depth_two(self):
        root = recursive_bisect(make_graph(8, path_edges(8)), 2)
        assert root.n_critical == 1
        assert [c.n_critical for c in root.children] == [1, 1]
        assert [d for d, _ in root.walk()] == [1, 2, 2]

    def test_invalid_depth(self):
        with pytest.raises(ValueError):
            recursive_bisect(make_graph(2, [(0, 1)]), 0)
