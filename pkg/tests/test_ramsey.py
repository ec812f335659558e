import itertools

import pytest
from hypothesis import given, settings

from alphaham.errors import PreconditionError
from alphaham.graph import complete_graph, cycle_graph, disjoint_union, empty_graph, is_clique, is_independent_set
from alphaham.oracles import brute_alpha
from alphaham.ramsey import binom, ramsey_bound, ramsey_extract
from strategies import graphs


def test_binomials():
    assert [binom(6, k) for k in range(7)] == [1, 6, 15, 20, 15, 6, 1]
    assert binom(3, 5) == 0
    assert ramsey_bound(3, 3) == 6 and ramsey_bound(4, 3) == 10


def test_base_case_returns_single_vertex():
    out = ramsey_extract(cycle_graph(4), 1, 5)
    assert out.tag == "independent" and out.members == (0,)
    out = ramsey_extract(cycle_graph(4), 3, 1)
    assert out.tag == "clique" and out.members == (0,)


def test_k6_gives_triangle():
    out = ramsey_extract(complete_graph(6), 3, 3)
    assert out.tag == "clique" and len(out.members) == 3


def test_two_pentagons_give_independent_set():
    g = disjoint_union(cycle_graph(5), cycle_graph(5))
    out = ramsey_extract(g, 4, 3)
    assert out.tag == "independent" and len(out.members) == 4
    assert is_independent_set(g, out.members)
    assert brute_alpha(g)[0] >= 4


def test_preconditions():
    with pytest.raises(PreconditionError):
        ramsey_extract(complete_graph(5), 3, 3)
    with pytest.raises(PreconditionError):
        ramsey_extract(empty_graph(3), 0, 2)
    with pytest.raises(PreconditionError):
        ramsey_extract(empty_graph(3), 40, 30)


@given(graphs(min_n=1, max_n=12))
@settings(max_examples=200, deadline=None)
def test_output_validates(g):
    for r, s in itertools.product(range(1, g.n + 1), repeat=2):
        if ramsey_bound(r, s) > g.n:
            continue
        out = ramsey_extract(g, r, s)
        if out.tag == "clique":
            assert len(out.members) == s and is_clique(g, out.members)
        else:
            assert len(out.members) == r and is_independent_set(g, out.members)
        assert out.operations <= (r + s) * g.n <= 2 * g.n * g.n
