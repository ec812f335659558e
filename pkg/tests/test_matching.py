import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from alphaham.matching import hopcroft_karp


def brute_matching_size(left, adj) -> int:
    best = 0
    rights = sorted({v for u in left for v in adj.get(u, ())})
    for size in range(min(len(left), len(rights)), 0, -1):
        for subset in itertools.combinations(left, size):
            for image in itertools.permutations(rights, size):
                if all(v in adj[u] for u, v in zip(subset, image)):
                    return size
    return best


def test_simple_augmenting_path():
    adj = {"a": ["x", "y"], "b": ["x"]}
    m = hopcroft_karp(["a", "b"], adj)
    assert m == {"a": "y", "b": "x"}


def test_empty_inputs():
    assert hopcroft_karp([], {}) == {}
    assert hopcroft_karp([1, 2], {}) == {}


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_matches_exhaustive_size(nl, nr, seed):
    rng = random.Random(seed)
    left = list(range(nl))
    adj = {u: [("r", v) for v in range(nr) if rng.random() < 0.4] for u in left}
    m = hopcroft_karp(left, adj)
    assert len(m) == brute_matching_size(left, adj)
    assert len(set(m.values())) == len(m)
    assert all(v in adj[u] for u, v in m.items())
