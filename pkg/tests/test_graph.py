import itertools

import pytest
from hypothesis import given

from alphaham.errors import DegreeError, LoopError, OutOfRange, ParseError, StructureError
from alphaham.graph import (
    Graph,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    dissolve,
    empty_graph,
    induced_subgraph,
    is_clique,
    is_independent_set,
    parse_graph,
    path_graph,
    petersen_graph,
    serialize_graph,
    subdivide,
)
from strategies import graphs


def test_parse_edge_list_path():
    g = parse_graph("3\n0 1\n1 2")
    assert g == path_graph(3)


def test_parse_single_vertex():
    g = parse_graph("1\n")
    assert g.n == 1 and g.m == 0


def test_duplicate_edges_collapse():
    assert parse_graph("3\n0 1\n1 0\n0 1\n").edges == ((0, 1),)


def test_parse_dimacs_c5_fixpoint():
    text = "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"
    g = parse_graph(text, "dimacs")
    assert g == cycle_graph(5)
    assert parse_graph(serialize_graph(g, "dimacs"), "dimacs") == g


def test_parse_json():
    g = parse_graph('{"n": 3, "edges": [[0, 1], [1, 2]]}', "json")
    assert g == path_graph(3)


def test_loop_rejected():
    with pytest.raises(LoopError):
        parse_graph("2\n1 1\n")


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as info:
        parse_graph("3\n0 1\n1 x\n")
    assert info.value.line == 3


def test_out_of_range_edge():
    with pytest.raises(ParseError):
        parse_graph("2\n0 5\n")


@given(graphs())
def test_serialize_roundtrip(g):
    for fmt in ("edge-list", "dimacs", "json"):
        assert parse_graph(serialize_graph(g, fmt), fmt) == g


def test_induced_subgraph_examples():
    sub, idmap = induced_subgraph(complete_graph(4), [0, 1, 2])
    assert sub == complete_graph(3) and idmap == (0, 1, 2)
    outer, _ = induced_subgraph(petersen_graph(), range(5))
    assert outer == cycle_graph(5)


def test_induced_subgraph_rejects_bad_ids():
    with pytest.raises(OutOfRange):
        induced_subgraph(cycle_graph(5), [0, 9])


@given(graphs())
def test_induced_subgraph_identity(g):
    sub, idmap = induced_subgraph(g, range(g.n))
    assert sub == g and idmap == tuple(range(g.n))


def test_components_examples():
    assert connected_components(complete_graph(3)) == [[0, 1, 2]]
    assert connected_components(empty_graph(3)) == [[0], [1], [2]]
    parts = connected_components(disjoint_union(complete_graph(3), path_graph(2)))
    assert [len(c) for c in parts] == [3, 2]


@given(graphs())
def test_components_partition(g):
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))
    owner = {v: i for i, c in enumerate(comps) for v in c}
    assert all(owner[u] == owner[v] for u, v in g.edges)
    for c in comps:
        sub, _ = induced_subgraph(g, c)
        assert len(connected_components(sub)) == 1


def test_independent_and_clique_predicates():
    assert is_independent_set(cycle_graph(5), [0, 2])
    assert is_clique(complete_graph(4), range(4))
    pet = petersen_graph()
    assert not any(is_clique(pet, s) for s in itertools.combinations(range(10), 5))
    assert not any(is_clique(pet, s) for s in itertools.combinations(range(10), 3))


def test_dissolve_path():
    res, witness = dissolve(path_graph(5), [0, 4])
    assert res.edges == ((0, 1),)
    assert witness[(0, 1)] == (0, 1, 2, 3, 4)


def test_dissolve_cycle_to_triangle():
    res, _ = dissolve(cycle_graph(6), [0, 2, 4])
    assert res == complete_graph(3)


def test_dissolve_subdivided_k4():
    m = subdivide(complete_graph(4))
    res, witness = dissolve(m, [0, 1, 2, 3])
    assert res == complete_graph(4)
    # re-subdividing along the witness paths gives back M
    edges = {tuple(sorted(e)) for path in witness.values() for e in zip(path, path[1:])}
    assert edges == set(m.edges)


def test_dissolve_errors():
    with pytest.raises(DegreeError):
        dissolve(complete_graph(4), [0])
    with pytest.raises(StructureError):
        dissolve(cycle_graph(4), [0])
    with pytest.raises(StructureError):
        dissolve(disjoint_union(path_graph(2), cycle_graph(3)), [0, 1])


def test_graph_is_immutable_value():
    g = Graph.from_edges(3, [(2, 0), (0, 1)])
    assert g.edges == ((0, 1), (0, 2))
    assert g.neighbors(0) == [1, 2]
    assert hash(g) == hash(Graph.from_edges(3, [(0, 1), (0, 2)]))
