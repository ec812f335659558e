"""Simple undirected graphs on dense integer vertex ids.

A :class:`Graph` is immutable: vertices are ``0..n-1``, edges are stored once
as ``(u, v)`` with ``u < v``, and adjacency is available both as frozensets and
as integer bitmasks (the latter keeps the enumeration-heavy code fast).
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import DegreeError, LoopError, OutOfRange, ParseError, StructureError

Edge = tuple[int, int]


def _canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adj: tuple[frozenset[int], ...] = field(repr=False)
    masks: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        eset: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            eset.add(_canon(u, v))
        nbrs: list[set[int]] = [set() for _ in range(n)]
        masks = [0] * n
        for u, v in eset:
            nbrs[u].add(v)
            nbrs[v].add(u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(
            n=n,
            edges=tuple(sorted(eset)),
            adj=tuple(frozenset(s) for s in nbrs),
            masks=tuple(masks),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def check_vertices(self, vs: Iterable[int]) -> list[int]:
        out = list(vs)
        for v in out:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise OutOfRange(f"vertex {v!r} not in 0..{self.n - 1}")
        if len(set(out)) != len(out):
            raise ValueError("duplicate vertices in vertex set")
        return out


# ---------------------------------------------------------------- parsing


def parse_graph(text: str, format: str = "edge-list") -> Graph:
    """Parse ``text`` in one of the formats ``edge-list``, ``dimacs``, ``json``."""
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "dimacs":
        return _parse_dimacs(text)
    if format == "json":
        return _parse_json(text)
    raise ParseError(f"unknown graph format {format!r}")


def _ints(parts: list[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def _parse_edge_list(text: str) -> Graph:
    n: int | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ParseError("first line must hold the vertex count", lineno)
            (n,) = _ints(parts, lineno)
            if n < 0:
                raise ParseError("negative vertex count", lineno)
            continue
        if len(parts) != 2:
            raise ParseError("edge lines must be 'u v'", lineno)
        u, v = _ints(parts, lineno)
        _check_edge(u, v, n, lineno)
        edges.append((u, v))
    if n is None:
        raise ParseError("empty input")
    return Graph.from_edges(n, edges)


def _check_edge(u: int, v: int, n: int, lineno: int) -> None:
    if u == v:
        raise LoopError(f"loop at vertex {u}", lineno)
    if not (0 <= u < n and 0 <= v < n):
        raise ParseError(f"vertex out of range in edge ({u}, {v})", lineno)


def _parse_dimacs(text: str) -> Graph:
    n: int | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError("problem line must be 'p edge n m'", lineno)
            n, _ = _ints(parts[2:], lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(parts) != 3:
                raise ParseError("edge lines must be 'e u v'", lineno)
            u, v = _ints(parts[1:], lineno)
            _check_edge(u - 1, v - 1, n, lineno)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    return Graph.from_edges(n, edges)


def _parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(data, dict) or "n" not in data:
        raise ParseError("JSON graph must be an object with key 'n'")
    n = data["n"]
    if not isinstance(n, int) or n < 0:
        raise ParseError("'n' must be a non-negative integer")
    edges = []
    for idx, e in enumerate(data.get("edges", [])):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ParseError(f"edge #{idx} is not a pair of integers")
        u, v = e
        if u == v:
            raise LoopError(f"loop at vertex {u} (edge #{idx})")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range in edge #{idx}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph, format: str = "edge-list") -> str:
    if format == "edge-list":
        return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges]) + "\n"
    if format == "dimacs":
        lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
        return "\n".join(lines) + "\n"
    if format == "json":
        return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})
    raise ParseError(f"unknown graph format {format!r}")


# ------------------------------------------------------------- operations


def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``G[S]`` relabeled to ``0..|S|-1`` and the map back to ``G`` ids."""
    order = g.check_vertices(vs)
    local = {v: i for i, v in enumerate(order)}
    edges = [
        (local[u], local[v]) for u, v in g.edges if u in local and v in local
    ]
    return Graph.from_edges(len(order), edges), tuple(order)


def remove_vertices(g: Graph, vs: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    drop = set(vs)
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop])


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    """Components (as sorted vertex lists) ordered by smallest member.

    With ``within`` the components of ``G[within]`` are returned, in ``G`` ids.
    """
    allowed = 0
    if within is None:
        allowed = (1 << g.n) - 1
    else:
        for v in within:
            allowed |= 1 << v
    comps = []
    remaining = allowed
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= g.masks[b.bit_length() - 1]
                f ^= b
            nxt &= allowed & ~comp
            comp |= nxt
            frontier = nxt
        remaining &= ~comp
        comps.append(bits(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def to_mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def is_independent_set(g: Graph, vs: Iterable[int]) -> bool:
    order = g.check_vertices(vs)
    m = to_mask(order)
    return all(g.masks[v] & m == 0 for v in order)


def is_clique(g: Graph, vs: Iterable[int]) -> bool:
    order = g.check_vertices(vs)
    m = to_mask(order)
    return all((g.masks[v] | (1 << v)) & m == m for v in order)


def dissolve(m_graph: Graph, terminals: Sequence[int]) -> tuple[Graph, dict[Edge, tuple[int, ...]]]:
    """Dissolve every non-terminal of ``m_graph`` (each must have degree 2).

    The result lives on ``len(terminals)`` vertices, vertex ``i`` standing for
    ``terminals[i]``.  The witness map sends each result edge ``(i, j)``, ``i < j``,
    to the vertex sequence of ``m_graph`` it replaces, read from ``terminals[i]``
    to ``terminals[j]``.
    """
    term = m_graph.check_vertices(terminals)
    index = {t: i for i, t in enumerate(term)}
    for v in range(m_graph.n):
        if v not in index and m_graph.degree(v) != 2:
            raise DegreeError(f"non-terminal {v} has degree {m_graph.degree(v)}")
    witness: dict[Edge, tuple[int, ...]] = {}
    seen_inner: set[int] = set()
    for t in term:
        for first in m_graph.neighbors(t):
            walk = [t, first]
            prev, cur = t, first
            while cur not in index:
                a, b = m_graph.neighbors(cur)
                prev, cur = cur, (b if a == prev else a)
                walk.append(cur)
            if cur == t:
                raise StructureError(f"dissolving creates a loop at terminal {t}")
            seen_inner.update(walk[1:-1])
            i, j = index[t], index[cur]
            key = (i, j) if i < j else (j, i)
            path = tuple(walk) if i < j else tuple(reversed(walk))
            old = witness.get(key)
            if old is None:
                witness[key] = path
            elif old != path:
                raise StructureError(
                    f"terminals {t} and {cur} joined by two dissolved paths"
                )
    stray = [v for v in range(m_graph.n) if v not in index and v not in seen_inner]
    if stray:
        raise StructureError(f"non-terminal cycle without terminals through {stray[0]}")
    return Graph.from_edges(len(term), witness.keys()), witness


# ----------------------------------------------------------- named graphs


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges: list[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def complement(g: Graph) -> Graph:
    return Graph.from_edges(
        g.n,
        [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)],
    )


def subdivide(g: Graph, times: int = 1) -> Graph:
    """Replace every edge by a path with ``times`` new inner vertices."""
    edges: list[Edge] = []
    nxt = g.n
    for u, v in g.edges:
        chain = [u] + list(range(nxt, nxt + times)) + [v]
        nxt += times
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, edges)
