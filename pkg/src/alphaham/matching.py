"""Hopcroft-Karp maximum bipartite matching."""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable, Mapping, Sequence

INF = float("inf")


def hopcroft_karp(
    left: Sequence[Hashable], adjacency: Mapping[Hashable, Sequence[Hashable]]
) -> dict[Hashable, Hashable]:
    """Maximum matching of ``left`` into the right side.

    ``adjacency[u]`` lists the right-side neighbours of ``u``; neighbours are
    tried in the given order, so the result is deterministic.  Returns a map
    from matched left vertices to their partners.
    """
    match_l: dict[Hashable, Hashable] = {}
    match_r: dict[Hashable, Hashable] = {}
    dist: dict[Hashable, float] = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if u in match_l:
                dist[u] = INF
            else:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adjacency.get(u, ()):
                w = match_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: Hashable) -> bool:
        for v in adjacency.get(u, ()):
            w = match_r.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if u not in match_l:
                dfs(u)
    return match_l
