import random

import pytest
from hypothesis import given, settings

from alphaham.connectivity import (
    connectivity_at_least,
    is_c_connected,
    menger_fan,
    terminal_to_clique_paths,
    validate_fan,
    vertex_connectivity,
)
from alphaham.errors import FlowDeficit, PreconditionError
from alphaham.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    petersen_graph,
    star_graph,
)
from brute import brute_connectivity, disconnects
from corpus import all_connected
from strategies import graphs


def test_complete_graph_convention():
    res = vertex_connectivity(complete_graph(5))
    assert res.kappa == 4 and res.separator is None
    assert vertex_connectivity(complete_graph(1)).kappa == 0


def test_cycle_and_petersen():
    res = vertex_connectivity(cycle_graph(6))
    assert res.kappa == 2 and disconnects(cycle_graph(6), res.separator)
    assert res.separator == (1, 5)
    assert vertex_connectivity(petersen_graph()).kappa == 3


def test_disconnected_graph_has_zero_connectivity():
    res = vertex_connectivity(empty_graph(3))
    assert res.kappa == 0 and res.separator == ()


def test_is_c_connected_examples():
    assert is_c_connected(complete_graph(4), 3) == (True, None)
    ok, sep = is_c_connected(cycle_graph(5), 3)
    assert not ok and len(sep) == 2
    k33 = complete_bipartite(3, 3)
    assert is_c_connected(k33, 3)[0]
    ok, sep = is_c_connected(k33, 4)
    assert not ok and sep == (3, 4, 5)
    with pytest.raises(PreconditionError):
        is_c_connected(k33, 0)


@given(graphs(min_n=1, max_n=7))
@settings(max_examples=150, deadline=None)
def test_connectivity_matches_subsets(g):
    res = vertex_connectivity(g)
    assert res.kappa == brute_connectivity(g)
    if res.separator:
        assert disconnects(g, res.separator)
    for c in range(1, g.n + 1):
        ok, sep = is_c_connected(g, c)
        assert ok == (res.kappa >= c)
        if not ok and sep is not None and g.n > 1 and not g.is_complete():
            assert len(sep) < c


def test_connectivity_corpus_n6():
    for g in all_connected(6):
        assert vertex_connectivity(g).kappa == brute_connectivity(g)


def test_connectivity_at_least_treats_cliques_as_unbounded():
    assert connectivity_at_least(complete_graph(3), 50)
    assert not connectivity_at_least(cycle_graph(8), 3)


def test_menger_fan_examples():
    fan = menger_fan(star_graph(4), 0, [1, 2, 3, 4], 4)
    assert fan.paths == ((0, 1), (0, 2), (0, 3), (0, 4))
    fan = menger_fan(cycle_graph(5), 0, [2, 3], 2)
    assert fan.paths == ((0, 1, 2), (0, 4, 3))
    g = Graph.from_edges(5, [e for e in complete_graph(5).edges if e != (0, 4)])
    fan = menger_fan(g, 0, [2, 3, 4], 3)
    assert len(fan.paths) == 3 and validate_fan(g, fan, [2, 3, 4])


def test_menger_fan_rejects_bad_input():
    with pytest.raises(PreconditionError):
        menger_fan(cycle_graph(5), 0, [0, 2], 2)
    with pytest.raises(PreconditionError):
        menger_fan(cycle_graph(5), 0, [], 2)


@given(graphs(min_n=2, max_n=8, connected=True))
@settings(max_examples=150, deadline=None)
def test_menger_fan_size(g):
    kappa = vertex_connectivity(g).kappa
    rng = random.Random(g.n * 31 + g.m)
    x = rng.randrange(g.n)
    others = [v for v in range(g.n) if v != x]
    targets = rng.sample(others, rng.randint(1, len(others)))
    for cap in range(1, len(targets) + 1):
        fan = menger_fan(g, x, targets, cap)
        assert validate_fan(g, fan, targets)
        if min(cap, len(targets)) <= kappa:
            assert len(fan.paths) == min(cap, len(targets))


def test_terminal_to_clique_paths_complete():
    g = complete_graph(8)
    paths = terminal_to_clique_paths(g, [0, 1, 2, 3], [4, 5, 6, 7])
    assert all(len(p) == 2 for p in paths)
    assert sorted(p[-1] for p in paths) == [4, 5, 6, 7]


def test_terminal_to_clique_paths_shared_vertex():
    paths = terminal_to_clique_paths(complete_graph(6), [0, 1], [1, 2, 3])
    assert (1,) in paths and len({p[-1] for p in paths}) == 2


def test_terminal_to_clique_random_6_connected():
    rng = random.Random(7)
    while True:
        g = Graph.from_edges(
            14, [(u, v) for u in range(14) for v in range(u + 1, 14) if rng.random() < 0.75]
        )
        if connectivity_at_least(g, 6):
            break
    clique = [v for v in range(14)]
    # greedy clique of size 4 away from the terminals
    cl: list[int] = []
    for v in clique[4:]:
        if all(g.has_edge(v, c) for c in cl):
            cl.append(v)
        if len(cl) == 4:
            break
    paths = terminal_to_clique_paths(g, [0, 1, 2, 3], cl)
    used = [v for p in paths for v in p]
    assert len(used) == len(set(used))
    assert all(p[0] == t for p, t in zip(paths, [0, 1, 2, 3]))
    assert all(all(g.has_edge(a, b) for a, b in zip(p, p[1:])) for p in paths)
    assert {p[-1] for p in paths} <= set(cl)


def test_terminal_to_clique_deficit():
    with pytest.raises(FlowDeficit):
        terminal_to_clique_paths(path_graph(4), [0, 1], [2, 3])
