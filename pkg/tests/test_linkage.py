import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphaham.connectivity import connectivity_at_least
from alphaham.embedding import validate_tm_embedding
from alphaham.errors import ConnectivityError, DegeneratePair, PreconditionError
from alphaham.generators import clique_blowup
from alphaham.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    is_independent_set,
    path_graph,
)
from alphaham.linkage import (
    brute_force_linkage,
    disjoint_paths_or_is,
    normalize_terminals,
    spanning_embedding_or_is,
    validate_linkage,
)
from alphaham.oracles import brute_alpha
from strategies import graphs


def power_of_cycle(n: int, d: int) -> Graph:
    return Graph.from_edges(n, [(v, (v + j) % n) for v in range(n) for j in range(1, d + 1)])


def test_normalize_identity_when_terminals_distinct():
    g = cycle_graph(5)
    norm = normalize_terminals(g, [(0, 2), (1, 3)])
    assert norm.graph == g and norm.pairs == ((0, 2), (1, 3))
    assert norm.back == tuple(range(5))


def test_normalize_splits_repeated_terminal_into_twins():
    g = path_graph(4)
    norm = normalize_terminals(g, [(1, 0), (1, 2)])
    assert norm.graph.n == 5
    assert norm.pairs == ((1, 0), (4, 2))
    twin = norm.graph
    assert twin.has_edge(1, 4)
    assert set(twin.neighbors(4)) - {1} == set(g.neighbors(1))


def test_normalize_twins_of_adjacent_terminals_are_adjacent():
    # every pair of a triangle shares terminals; copies must stay adjacent
    norm = normalize_terminals(complete_graph(3), [(0, 1), (0, 2), (1, 2)])
    assert norm.graph.is_complete() and norm.graph.n == 6


def test_normalize_rejects_degenerate_pair():
    with pytest.raises(DegeneratePair):
        normalize_terminals(path_graph(3), [(1, 1)])


@given(graphs(min_n=3, max_n=7), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_twin_independent_sets_map_back(g, seed):
    rng = random.Random(seed)
    pairs = [tuple(rng.sample(range(g.n), 2)) for _ in range(3)]
    norm = normalize_terminals(g, pairs)
    size, members = brute_alpha(norm.graph)
    back = norm.set_back(members)
    assert is_independent_set(g, back) and len(back) == size


def test_brute_force_examples():
    assert brute_force_linkage(path_graph(4), [(0, 3)]).paths == ((0, 1, 2, 3),)
    assert brute_force_linkage(cycle_graph(4), [(0, 2), (1, 3)]) is None
    link = brute_force_linkage(complete_graph(4), [(0, 1), (2, 3)])
    assert link.paths == ((0, 1), (2, 3))


@given(graphs(min_n=2, max_n=7), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_brute_force_linkage_validates(g, seed):
    rng = random.Random(seed)
    pairs = [tuple(rng.sample(range(g.n), 2)) for _ in range(rng.randint(1, 2))]
    link = brute_force_linkage(g, pairs)
    if link is not None:
        assert validate_linkage(g, pairs, link.paths)


def test_disjoint_paths_in_large_clique():
    g = complete_graph(20)
    out = disjoint_paths_or_is(g, 3, [(0, 1), (2, 3)])
    assert out.tag == "linkage"
    assert validate_linkage(g, [(0, 1), (2, 3)], out.linkage.paths)


def test_disjoint_paths_brute_branch_on_cycle_power():
    g = power_of_cycle(12, 5)
    assert connectivity_at_least(g, 10)
    out = disjoint_paths_or_is(g, 3, [(0, 6)])
    assert out.tag == "linkage" and out.stats["route"] == "brute"
    assert validate_linkage(g, [(0, 6)], out.linkage.paths)
    assert brute_force_linkage(g, [(0, 6)]) is not None


def test_disjoint_paths_independent_set_branch():
    g = complete_bipartite(20, 20)
    out = disjoint_paths_or_is(g, 2, [(0, 1), (2, 3)])
    assert out.tag == "independent_set" and len(out.independent_set) == 2
    assert is_independent_set(g, out.independent_set)


def test_disjoint_paths_requires_connectivity():
    with pytest.raises(ConnectivityError):
        disjoint_paths_or_is(cycle_graph(8), 2, [(0, 4)])


def test_spanning_path_in_k6():
    out = spanning_embedding_or_is(path_graph(2), complete_graph(6), [0, 5], 2, check_connectivity=False)
    assert out.tag == "embedding" and out.embedding.size == 6
    assert validate_tm_embedding(path_graph(2), complete_graph(6), out.embedding)


def test_spanning_rejects_undersized_connectivity():
    g = Graph.from_edges(6, [e for e in complete_graph(6).edges if e not in {(0, 1), (2, 3), (4, 5)}])
    with pytest.raises(ConnectivityError):
        spanning_embedding_or_is(path_graph(2), g, [0, 2], 1)


def test_spanning_rejects_bad_maps():
    with pytest.raises(PreconditionError):
        spanning_embedding_or_is(path_graph(2), complete_graph(40), [3, 3], 1)
    with pytest.raises(PreconditionError):
        spanning_embedding_or_is(Graph.from_edges(0, []), complete_graph(4), [], 1)


def test_spanning_triangle_in_clique_blowup():
    octahedron = Graph.from_edges(6, [(u, v) for u in range(6) for v in range(u + 1, 6) if v - u != 3])
    g = clique_blowup(octahedron, 15)
    h = cycle_graph(3)
    out = spanning_embedding_or_is(h, g, [0, 15, 30], 2)
    assert out.tag == "embedding"
    assert out.embedding.size == g.n
    assert validate_tm_embedding(h, g, out.embedding)
    assert out.stats["iterations"] <= g.n


def test_spanning_parity_obstruction_gives_independent_set():
    # a path between the two sides of K_{30,31} has an even number of vertices
    g = complete_bipartite(30, 31)
    out = spanning_embedding_or_is(path_graph(2), g, [0, 30], 2)
    assert out.tag == "independent_set" and len(out.independent_set) == 2
    assert is_independent_set(g, out.independent_set)


def test_k1_independent_set_is_a_single_vertex():
    out = spanning_embedding_or_is(path_graph(2), complete_graph(32), [0, 1], 1)
    assert out.tag == "embedding" or len(out.independent_set) == 1


def test_spanning_with_isolated_pattern_vertex():
    h = Graph.from_edges(3, [(0, 1)])
    g = complete_graph(32)
    out = spanning_embedding_or_is(h, g, [4, 9, 17], 2)
    assert out.tag == "embedding" and out.embedding.size == 32
    assert validate_tm_embedding(h, g, out.embedding)


@pytest.mark.parametrize("n", range(3, 11))
def test_cliques_agree_with_brute_force(n):
    # complete graphs are the only hosts this small that meet the connectivity gate
    g = complete_graph(n)
    rng = random.Random(n)
    for _ in range(5):
        ell = rng.randint(1, min(2, n // 2))
        ends = rng.sample(range(n), 2 * ell)
        pairs = list(zip(ends[::2], ends[1::2]))
        out = disjoint_paths_or_is(g, 3, pairs)
        assert out.tag == "linkage"
        assert validate_linkage(g, pairs, out.linkage.paths)
        assert brute_force_linkage(g, pairs) is not None


@given(graphs(min_n=2, max_n=7), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_edge_subset_and_backtracking_routers_agree(g, seed):
    from alphaham.linkage import _backtrack_linkage, _edge_subset_linkage

    if g.m > 12:
        return
    rng = random.Random(seed)
    ell = rng.randint(1, min(2, g.n // 2))
    ends = rng.sample(range(g.n), 2 * ell)
    pairs = list(zip(ends[::2], ends[1::2]))
    a = _edge_subset_linkage(g, pairs)
    b = _backtrack_linkage(g, pairs)
    assert (a is None) == (b is None)
    for found in (a, b):
        if found is not None:
            assert validate_linkage(g, pairs, found)
