"""Unit-capacity max-flow used for every Menger-type computation.

Augmenting paths are found by BFS, scanning arcs in insertion order; callers
insert arcs in ascending vertex order, which makes the extracted paths
deterministic.
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self.head: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.orig: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        idx = len(self.to)
        self.to += (v, u)
        self.cap += (cap, 0)
        self.orig += (cap, 0)
        self.head[u].append(idx)
        self.head[v].append(idx + 1)
        return idx

    def max_flow(self, source: int, sink: int, limit: int | None = None) -> int:
        value = 0
        to, cap, head = self.to, self.cap, self.head
        while limit is None or value < limit:
            parent_arc = [-1] * self.num_nodes
            parent_arc[source] = -2
            queue = deque([source])
            found = False
            while queue and not found:
                u = queue.popleft()
                for a in head[u]:
                    if cap[a] > 0:
                        v = to[a]
                        if parent_arc[v] == -1:
                            parent_arc[v] = a
                            if v == sink:
                                found = True
                                break
                            queue.append(v)
            if not found:
                break
            v = sink
            while v != source:
                a = parent_arc[v]
                cap[a] -= 1
                cap[a ^ 1] += 1
                v = to[a ^ 1]
            value += 1
        return value

    def reachable(self, source: int) -> list[bool]:
        seen = [False] * self.num_nodes
        seen[source] = True
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for a in self.head[u]:
                if self.cap[a] > 0 and not seen[self.to[a]]:
                    seen[self.to[a]] = True
                    queue.append(self.to[a])
        return seen

    def flow_on(self, arc: int) -> int:
        return self.orig[arc] - self.cap[arc]

    def decompose(self, source: int, sink: int) -> list[list[int]]:
        """Split the current flow into source-sink node walks (cycles dropped)."""
        used = [self.flow_on(a) if a % 2 == 0 else 0 for a in range(len(self.to))]
        walks = []
        while True:
            start = next(
                (a for a in self.head[source] if a % 2 == 0 and used[a] > 0), None
            )
            if start is None:
                return walks
            walk = [source]
            a = start
            while True:
                used[a] -= 1
                v = self.to[a]
                if v in walk:
                    # drop the circulation that closes here
                    walk = walk[: walk.index(v) + 1]
                else:
                    walk.append(v)
                if v == sink:
                    break
                a = next(b for b in self.head[v] if b % 2 == 0 and used[b] > 0)
            walks.append(walk)


def split_network(
    n: int,
    edges,
    blocked: frozenset[int] | set[int] = frozenset(),
    uncapped: frozenset[int] | set[int] = frozenset(),
    extra_nodes: int = 2,
    edge_cap: int = 1,
) -> FlowNetwork:
    """Vertex-split network: ``v_in = 2v``, ``v_out = 2v + 1``.

    Vertices in ``blocked`` get no in->out arc (flow may end there but never
    pass through); vertices in ``uncapped`` get an in->out arc of capacity ``n``.
    Super nodes are ``2n`` and ``2n + 1``.  A large ``edge_cap`` makes every
    minimum cut consist of vertex arcs only, so it reads off as a separator.
    """
    net = FlowNetwork(2 * n + extra_nodes)
    for v in range(n):
        if v not in blocked:
            net.add_arc(2 * v, 2 * v + 1, n if v in uncapped else 1)
    arcs = []
    for u, v in edges:
        arcs.append((u, v))
        arcs.append((v, u))
    arcs.sort()
    for u, v in arcs:
        net.add_arc(2 * u + 1, 2 * v, edge_cap)
    return net


def walk_to_vertices(walk: list[int], n: int) -> list[int]:
    """Collapse a split-network node walk to graph vertices (drops super nodes)."""
    out: list[int] = []
    for node in walk:
        if node >= 2 * n:
            continue
        v = node // 2
        if not out or out[-1] != v:
            out.append(v)
    return out
