import itertools
import sys
import random

import pytest

from gridnet.grid_model import GridGraph


def make_graph(n, edges):
    """GridGraph on nodes 'v0'..; ``edges`` is a list of (u, v) or (u, v, w)."""
    pairs, weights = [], []
    for e in edges:
        pairs.append((e[0], e[1]))
        weights.append(e[2] if len(e) > 2 else 1.0)
    return GridGraph([f"v{i}" for i in range(n)], pairs, weights)


def triples(n, edges):
    return [(e[0], e[1], e[2] if len(e) > 2 else 1.0) for e in edges]


def path_edges(n, w=1.0):
    return [(i, i + 1, w) for i in range(n - 1)]


def cycle_edges(n):
    return [(i, (i + 1) % n, 1.0) for i in range(n)]


def star_edges(leaves):
    return [(0, i, 1.0) for i in range(1, leaves + 1)]


def complete_edges(n, w=1.0):
    return [(i, j, w) for i, j in itertools.combinations(range(n), 2)]


def barbell_edges(k):
    a = [(i, j, 1.0) for i, j in itertools.combinations(range(k), 2)]
    b = [(i + k, j + k, 1.0) for i, j in itertools.combinations(range(k), 2)]
    return a + b + [(k - 1, k, 1.0)]


# dyadic weights keep float sums exact, so ties are reproducible in any order
DYADIC = [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0]


def random_connected_edges(n, extra, rng, weights=None):
    """Random tree plus ``extra`` random edges (parallel edges possible)."""
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    perm = list(range(n))
    rng.shuffle(perm)
    out = []
    for u, v in edges:
        w = rng.choice(weights) if weights else 1.0
        out.append((perm[u], perm[v], w))
    return out


@pytest.fixture
def rng():
    return random.Random(20240521)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: end-to-end runs taking tens of seconds")


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
