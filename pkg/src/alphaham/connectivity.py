"""Vertex connectivity, minimum separators and Menger path fans.

Everything here runs unit-capacity max-flow on the vertex-split network from
:mod:`alphaham.flow`, so every result comes with explicit paths or an explicit
separator.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import FlowDeficit, PreconditionError
from .flow import split_network, walk_to_vertices
from .graph import Graph, connected_components, is_clique

Path = tuple[int, ...]


@dataclass(frozen=True)
class SeparatorResult:
    kappa: int
    separator: tuple[int, ...] | None

    def __post_init__(self) -> None:
        if self.separator is not None and len(self.separator) != self.kappa:
            raise ValueError("separator size must equal kappa")


@dataclass(frozen=True)
class PathFan:
    center: int
    paths: tuple[Path, ...]

    @property
    def ends(self) -> tuple[int, ...]:
        return tuple(p[-1] for p in self.paths)


def local_cut(g: Graph, s: int, t: int, limit: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Max number of internally disjoint s-t paths (s, t non-adjacent).

    Returns the value and, when the flow was not stopped by ``limit``, a
    minimum s-t vertex separator read off the residual network.
    """
    net = split_network(g.n, g.edges, uncapped={s, t}, edge_cap=g.n)
    value = net.max_flow(2 * s + 1, 2 * t, limit)
    seen = net.reachable(2 * s + 1)
    cut = tuple(v for v in range(g.n) if seen[2 * v] and not seen[2 * v + 1])
    return value, cut


def vertex_connectivity(g: Graph) -> SeparatorResult:
    """Exact ``c_v(G)`` with a minimum separator (``None`` iff ``G`` is complete)."""
    if g.is_complete():
        return SeparatorResult(max(g.n - 1, 0), None)
    comps = connected_components(g)
    if len(comps) > 1:
        return SeparatorResult(0, ())
    return _min_cut(g)


def _min_cut(g: Graph) -> SeparatorResult:
    # Start from the neighbourhood of a minimum-degree vertex, which is a
    # separator whenever G is connected and not complete.
    v0 = min(range(g.n), key=lambda v: (g.degree(v), v))
    best = g.degree(v0)
    best_cut = tuple(g.neighbors(v0))
    i = 0
    # Even's scheme: some vertex among the first best+1 avoids a minimum
    # separator, so pairing each of them with later non-neighbours suffices.
    while i <= best and i < g.n:
        for j in range(i + 1, g.n):
            if g.has_edge(i, j):
                continue
            value, cut = local_cut(g, i, j, limit=best)
            if value < best:
                best, best_cut = value, cut
        i += 1
    return SeparatorResult(best, tuple(sorted(best_cut)))


def is_c_connected(g: Graph, c: int) -> tuple[bool, tuple[int, ...] | None]:
    """Whether ``c_v(G) >= c``; on failure also a minimum separator (if any)."""
    if c < 1:
        raise PreconditionError("c must be at least 1")
    if g.is_complete():
        return g.n - 1 >= c, None
    if len(connected_components(g)) > 1:
        return False, ()
    delta = min(g.degree(v) for v in range(g.n))
    if delta < c:
        return False, vertex_connectivity(g).separator
    # Two non-adjacent vertices then share at least c neighbours.
    if 2 * delta >= g.n + c - 2:
        return True, None
    for i in range(min(c, g.n)):
        for j in range(i + 1, g.n):
            if g.has_edge(i, j):
                continue
            value, _ = local_cut(g, i, j, limit=c)
            if value < c:
                return False, vertex_connectivity(g).separator
    return True, None


def connectivity_at_least(g: Graph, c: int) -> bool:
    """``c_v(G) >= c`` with complete graphs treated as arbitrarily connected.

    Algorithms whose guarantees need very high connectivity only ever use it
    to route paths, and complete graphs route anything on their vertex set.
    """
    if g.is_complete():
        return True
    return is_c_connected(g, c)[0]


def _fan(
    g: Graph,
    x: int,
    targets: Sequence[int],
    cap: int,
    avoid: Iterable[int] = (),
) -> list[Path]:
    tset = set(targets)
    skip = set(avoid)
    edges = [(u, v) for u, v in g.edges if u not in skip and v not in skip]
    net = split_network(g.n, edges, blocked=tset | skip)
    sink = 2 * g.n
    for t in sorted(tset):
        net.add_arc(2 * t, sink, 1)
    net.max_flow(2 * x + 1, sink, cap)
    paths = [tuple(walk_to_vertices(w, g.n)) for w in net.decompose(2 * x + 1, sink)]
    paths.sort(key=lambda p: p[-1])
    return paths


def menger_fan(g: Graph, x: int, targets: Sequence[int], cap: int) -> PathFan:
    """Up to ``cap`` paths from ``x`` into ``targets`` sharing only ``x``."""
    tset = set(g.check_vertices(targets))
    if x in tset:
        raise PreconditionError("fan centre must lie outside the target set")
    if not tset:
        raise PreconditionError("target set must be nonempty")
    if cap <= 0:
        return PathFan(x, ())
    return PathFan(x, tuple(_fan(g, x, sorted(tset), cap)))


def validate_fan(g: Graph, fan: PathFan, targets: Iterable[int]) -> bool:
    tset = set(targets)
    used: set[int] = set()
    for p in fan.paths:
        if len(p) < 2 or p[0] != fan.center or p[-1] not in tset:
            return False
        if any(v in tset for v in p[:-1]):
            return False
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            return False
        for v in p[1:]:
            if v in used:
                return False
            used.add(v)
    return True


def terminal_to_clique_paths(g: Graph, terminals: Sequence[int], clique: Sequence[int]) -> list[Path]:
    """Vertex-disjoint paths, the i-th from ``terminals[i]`` into ``clique``.

    Ends are distinct clique vertices; a terminal already in the clique gets
    the trivial path.
    """
    term = g.check_vertices(terminals)
    cl = g.check_vertices(clique)
    if not is_clique(g, cl):
        raise PreconditionError("target set is not a clique")
    if len(cl) < len(term):
        raise PreconditionError("clique smaller than terminal list")
    net = split_network(g.n, g.edges)
    source, sink = 2 * g.n, 2 * g.n + 1
    for t in term:
        net.add_arc(source, 2 * t, 1)
    for c in sorted(cl):
        net.add_arc(2 * c + 1, sink, 1)
    value = net.max_flow(source, sink)
    if value < len(term):
        raise FlowDeficit(f"only {value} of {len(term)} disjoint paths to the clique")
    by_start: dict[int, Path] = {}
    for w in net.decompose(source, sink):
        p = tuple(walk_to_vertices(w, g.n))
        by_start[p[0]] = p
    return [by_start[t] for t in term]


def separator_components(g: Graph, sep: Iterable[int]) -> list[list[int]]:
    drop = set(sep)
    return connected_components(g, [v for v in range(g.n) if v not in drop])


__all__ = [
    "PathFan",
    "SeparatorResult",
    "connectivity_at_least",
    "is_c_connected",
    "local_cut",
    "menger_fan",
    "separator_components",
    "terminal_to_clique_paths",
    "validate_fan",
    "vertex_connectivity",
]
