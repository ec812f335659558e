"""Seeded instance generators for dense graphs of small independence number."""

from __future__ import annotations

import random
from collections.abc import Sequence

from .graph import Graph


def clique_union(sizes: Sequence[int], cross_p: float, seed: int) -> Graph:
    """Disjoint cliques plus independent random edges between them.

    The independence number is at most ``len(sizes)`` since every independent
    set meets each clique at most once.
    """
    if any(s < 1 for s in sizes):
        raise ValueError("clique sizes must be positive")
    if not 0.0 <= cross_p <= 1.0:
        raise ValueError("cross_p must lie in [0, 1]")
    rng = random.Random(seed)
    owner = [c for c, s in enumerate(sizes) for _ in range(s)]
    n = len(owner)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if owner[u] == owner[v] or rng.random() < cross_p:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def clique_blowup(base: Graph, q: int | Sequence[int]) -> Graph:
    """Replace vertex ``v`` of ``base`` by a clique of size ``q[v]``.

    Cliques of adjacent base vertices are completely joined, so the blow-up
    keeps the independence number of ``base``.
    """
    sizes = [q] * base.n if isinstance(q, int) else list(q)
    if len(sizes) != base.n or any(s < 1 for s in sizes):
        raise ValueError("one positive clique size per base vertex is required")
    start = [0]
    for s in sizes:
        start.append(start[-1] + s)
    blocks = [range(start[v], start[v + 1]) for v in range(base.n)]
    edges = []
    for block in blocks:
        edges.extend((a, b) for a in block for b in block if a < b)
    for u, v in base.edges:
        edges.extend((a, b) for a in blocks[u] for b in blocks[v])
    return Graph.from_edges(start[-1], edges)


__all__ = ["clique_blowup", "clique_union"]
