import json

import pytest
from hypothesis import given, settings, strategies as st

from gridnet.errors import (
    DuplicateNodeError,
    InfeasibleError,
    MalformedHeaderError,
    MissingFieldError,
    NonNumericFieldError,
    UnknownNodeReferenceError,
)
from gridnet.grid_model import EdgeRecord, NodeRecord
from gridnet.ingest import (
    edges_to_csv,
    generate_synthetic_grid,
    grid_to_json,
    nodes_to_csv,
    parse_grid,
    parse_grid_csv,
    parse_grid_json,
    write_grid,
)

NODES = "id,kind\nA,substation\nB,transformer\n"
EDGES = "from,to,resistance_ohm_per_km,length_km,is_link,max_current_a\nA,B,0.5,2,0,\n"


def test_minimal_csv():
    nodes, edges = parse_grid_csv(NODES, EDGES)
    assert nodes == [NodeRecord("A", "substation"), NodeRecord("B", "transformer")]
    assert edges == [EdgeRecord("A", "B", 0.5, 2.0, False, None)]


def test_undeclared_node_names_id_and_line():
    bad = EDGES + "A,Q,1,1,0,\n"
    with pytest.raises(UnknownNodeReferenceError, match="'Q'") as exc:
        parse_grid_csv(NODES, bad)
    assert exc.value.line == 3


def test_link_without_resistance():
    _, edges = parse_grid_csv(NODES, EDGES.splitlines()[0] + "\nA,B,,,1,\n")
    assert edges[0].is_link and edges[0].resistance_per_km is None


def test_malformed_header():
    with pytest.raises(MalformedHeaderError):
        parse_grid_csv("name,kind\nA,substation\n", EDGES)


def test_missing_required_field():
    with pytest.raises(MissingFieldError) as exc:
        parse_grid_csv(NODES, EDGES.splitlines()[0] + "\nA,B,,2,0,\n")
    assert exc.value.field == "resistance_ohm_per_km" and exc.value.line == 2


def test_non_numeric_field():
    with pytest.raises(NonNumericFieldError) as exc:
        parse_grid_csv(NODES, EDGES.splitlines()[0] + "\nA,B,0.5,two,0,\n")
    assert exc.value.field == "length_km" and exc.value.line == 2


def test_duplicate_node():
    with pytest.raises(DuplicateNodeError) as exc:
        parse_grid_csv(NODES + "A,consumer\n", EDGES)
    assert exc.value.line == 4


def test_json_document():
    doc = {
        "version": 1,
        "nodes": [{"id": "A", "kind": "substation"}, {"id": "B", "kind": "consumer"}],
        "edges": [{"from": "A", "to": "B", "resistance_ohm_per_km": 0.2, "length_km": 5,
                   "is_link": 0, "max_current_a": 150}],
    }
    nodes, edges = parse_grid_json(json.dumps(doc))
    assert edges[0] == EdgeRecord("A", "B", 0.2, 5.0, False, 150.0)
    assert parse_grid(json.dumps(doc)) == (nodes, edges)


def test_json_bad_version():
    with pytest.raises(MalformedHeaderError):
        parse_grid_json(json.dumps({"version": 7, "nodes": [], "edges": []}))


def test_json_undeclared_node():
    doc = {"version": 1, "nodes": [{"id": "A"}], "edges": [{"from": "A", "to": "X", "is_link": 1}]}
    with pytest.raises(UnknownNodeReferenceError) as exc:
        parse_grid_json(json.dumps(doc))
    assert exc.value.line == 1


def test_directory_and_json_files(tmp_path):
    nodes, edges = parse_grid_csv(NODES, EDGES)
    write_grid(nodes, edges, tmp_path / "grid")
    write_grid(nodes, edges, tmp_path / "grid.json")
    assert parse_grid(tmp_path / "grid") == (nodes, edges)
    assert parse_grid(tmp_path / "grid.json") == (nodes, edges)


def test_synthetic_constant():
    g = generate_synthetic_grid(10, 9, ("constant", 1.0), seed=7)
    assert (g.order, g.size) == (10, 9)
    assert g.is_connected()
    assert set(g.weights) == {1.0}


def test_synthetic_deterministic():
    a = generate_synthetic_grid(10, 9, ("constant", 1.0), seed=7)
    b = generate_synthetic_grid(10, 9, ("constant", 1.0), seed=7)
    assert list(a.edges()) == list(b.edges())
    c = generate_synthetic_grid(40, 50, ("uniform", 0.1, 3.0), seed=7)
    d = generate_synthetic_grid(40, 50, ("uniform", 0.1, 3.0), seed=7)
    assert c == d


def test_synthetic_infeasible():
    with pytest.raises(InfeasibleError):
        generate_synthetic_grid(5, 3, ("constant", 1.0), seed=0)


record_sets = st.integers(2, 8).flatmap(
    lambda n: st.tuples(
        st.lists(st.sampled_from(["substation", "transformer", "consumer"]), min_size=n, max_size=n),
        st.lists(
            st.tuples(
                st.integers(0, n - 1), st.integers(0, n - 1),
                st.floats(0, 1e4, allow_nan=False), st.floats(0, 1e3, allow_nan=False),
                st.booleans(), st.one_of(st.none(), st.floats(0.1, 1e4)),
            ).filter(lambda e: e[0] != e[1]),
            max_size=15,
        ),
    )
)


@settings(max_examples=60, deadline=None)
@given(record_sets)
def test_round_trip(data):
    kinds, raw = data
    nodes = [NodeRecord(f"n{i}", k) for i, k in enumerate(kinds)]
    edges = [
        EdgeRecord(f"n{a}", f"n{b}", None if link else r, None if link else l, link, c)
        for a, b, r, l, link, c in raw
    ]
    assert parse_grid_csv(nodes_to_csv(nodes), edges_to_csv(edges)) == (nodes, edges)
    assert parse_grid_json(grid_to_json(nodes, edges)) == (nodes, edges)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(0, 30), st.integers(0, 2**63 - 1))
def test_synthetic_always_valid(order, extra, seed):
    size = min(order - 1 + extra, order * (order - 1) // 2)
    g = generate_synthetic_grid(order, size, ("uniform", 0.5, 2.0), seed=seed)
    assert (g.order, g.size) == (order, size)
    assert g.is_connected()
