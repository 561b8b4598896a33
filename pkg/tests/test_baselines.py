import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gridnet.baselines import (
    _pair_from_index,
    baseline_metrics,
    random_connected_graph,
    random_connected_pairs,
    small_world_test,
    ws_condition,
)
from gridnet.errors import InfeasibleError
from gridnet.path_metrics import average_path_length, characteristic_path_length, clustering_coefficient


def test_pair_index_roundtrip():
    n = 9
    i, j = _pair_from_index(np.arange(n * (n - 1) // 2), n)
    assert list(zip(i.tolist(), j.tolist())) == [(a, b) for a in range(n) for b in range(a + 1, n)]


def test_matched_dimensions():
    g = random_connected_graph(15, 16, 1)
    assert (g.order, g.size) == (15, 16) and g.is_connected()


def test_tree_and_complete_forced():
    t = random_connected_graph(5, 4, 7)
    assert t.size == 4 and t.is_connected()
    k = random_connected_graph(5, 10, 7)
    assert sorted(zip(k.edge_u.tolist(), k.edge_v.tolist())) == [(i, j) for i in range(5) for j in range(i + 1, 5)]


@pytest.mark.parametrize("order,size", [(5, 3), (5, 11), (0, 0)])
def test_infeasible(order, size):
    with pytest.raises(InfeasibleError):
        random_connected_graph(order, size, 0)


def test_seed_determinism():
    a = random_connected_graph(40, 60, 3)
    b = random_connected_graph(40, 60, 3)
    c = random_connected_graph(40, 60, 4)
    assert a.edge_u.tolist() == b.edge_u.tolist() and a.edge_v.tolist() == b.edge_v.tolist()
    assert (a.edge_u.tolist(), a.edge_v.tolist()) != (c.edge_u.tolist(), c.edge_v.tolist())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 60), st.floats(0, 1), st.integers(0, 10**6))
def test_generator_exact_and_connected(order, frac, seed):
    lo, hi = order - 1, order * (order - 1) // 2
    size = lo + int(round(frac * (hi - lo)))
    pairs = random_connected_pairs(order, size, np.random.default_rng(seed))
    assert len(pairs) == size == len(set(pairs))
    assert all(0 <= i < j < order for i, j in pairs)
    g = random_connected_graph(order, size, seed)
    assert g.order == order and g.size == size and g.is_connected()


def test_tree_fallback_used_when_rejection_exhausted():
    pairs = random_connected_pairs(12, 13, np.random.default_rng(0), attempts=0)
    assert len(set(pairs)) == 13


def test_single_trial_equals_graph():
    g = random_connected_graph(25, 40, 11)
    m = baseline_metrics(25, 40, 11, trials=1)
    assert m.apl == average_path_length(g)
    assert m.cpl == characteristic_path_length(g)
    assert m.cc == clustering_coefficient(g)


def test_tree_baseline_has_no_triangles():
    # (30, 29) is always a tree, so the fixture value is exactly 0 +- 0
    m = baseline_metrics(30, 29, 0, trials=100)
    assert (m.cc, m.cc_sd) == (0.0, 0.0)


def test_cc_sd_of_mean_shrinks():
    small = baseline_metrics(40, 120, 0, trials=10)
    large = baseline_metrics(40, 120, 0, trials=160)
    assert large.cc_sd / math.sqrt(160) < small.cc_sd / math.sqrt(10)


def test_small_world_examples():
    v = small_world_test({"cpl": 3.0, "cc": 0.5}, {"cpl": 2.9, "cc": 0.01})
    assert v.is_small_world
    lv5 = small_world_test({"cpl": 17.878, "cc": 0.0}, {"cpl": 4.345, "cc": 0.00532})
    assert not lv5.is_small_world and lv5.cpl_ratio == pytest.approx(17.878 / 4.345)
    deg = small_world_test({"cpl": 3.0, "cc": 0.5}, {"cpl": 2.9, "cc": 0.0})
    assert deg.cc_ratio_undefined and deg.cc_ratio is None and not deg.is_small_world


def test_ws_condition():
    assert ws_condition(10000, 20)
    assert not ws_condition(100, 2.2)  # <k> below 2 ln N
    assert not ws_condition(2, 1)


@settings(max_examples=100)
@given(st.floats(0.1, 10), st.floats(0, 1), st.floats(0.1, 10), st.floats(1e-4, 1), st.floats(0, 1))
def test_verdict_monotone_in_cc(cpl_s, cc_s, cpl_r, cc_r, bump):
    before = small_world_test({"cpl": cpl_s, "cc": cc_s}, {"cpl": cpl_r, "cc": cc_r})
    after = small_world_test({"cpl": cpl_s, "cc": cc_s + bump}, {"cpl": cpl_r, "cc": cc_r})
    assert not (before.is_small_world and not after.is_small_world)


def test_invalid_baseline_cpl():
    with pytest.raises(ValueError):
        small_world_test({"cpl": 1, "cc": 0}, {"cpl": 0, "cc": 0.1})
