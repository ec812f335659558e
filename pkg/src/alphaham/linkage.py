"""Disjoint paths in highly connected graphs, with an independent-set escape.

:func:`disjoint_paths_or_is` routes terminal pairs either by brute force (small
graphs) or through a clique found by the Ramsey extraction.
:func:`spanning_embedding_or_is` then grows such a linkage until it covers the
whole graph, or exhibits an independent set of the requested size.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

from .connectivity import _fan, connectivity_at_least, menger_fan, terminal_to_clique_paths
from .embedding import EmbedOutcome, TMEmbedding, validate_tm_embedding
from .errors import ConnectivityError, DegeneratePair, PreconditionError, SizeCap, StateError
from .graph import Graph, bits, induced_subgraph, is_independent_set
from .ramsey import ramsey_extract

Path = tuple[int, ...]
Pair = tuple[int, int]

EDGE_SUBSET_MAX = 16
BRUTE_MAX_VERTICES = 64


@dataclass(frozen=True)
class Linkage:
    paths: tuple[Path, ...]
    spanning: bool = False


@dataclass(frozen=True)
class LinkOutcome:
    tag: Literal["linkage", "independent_set"]
    linkage: Linkage | None = None
    independent_set: tuple[int, ...] | None = None
    stats: dict[str, Any] = field(default_factory=dict, compare=False)


def validate_linkage(g: Graph, pairs: Sequence[Pair], paths: Sequence[Sequence[int]], spanning: bool = False) -> bool:
    if len(paths) != len(pairs):
        return False
    terminals = {v for p in pairs for v in p}
    inner_seen: set[int] = set()
    covered: set[int] = set()
    for (s, t), p in zip(pairs, paths):
        if len(p) < 2 or p[0] != s or p[-1] != t or len(set(p)) != len(p):
            return False
        if any(not (0 <= v < g.n) for v in p):
            return False
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            return False
        for v in p[1:-1]:
            if v in terminals or v in inner_seen:
                return False
            inner_seen.add(v)
        covered.update(p)
    if spanning and len(covered) != g.n:
        return False
    return True


# ------------------------------------------------------------ normalization


@dataclass(frozen=True)
class Normalized:
    graph: Graph
    pairs: tuple[Pair, ...]
    back: tuple[int, ...]

    def path_back(self, p: Sequence[int]) -> Path:
        return tuple(self.back[v] for v in p)

    def set_back(self, vs: Sequence[int]) -> tuple[int, ...]:
        return tuple(sorted({self.back[v] for v in vs}))


def normalize_terminals(g: Graph, pairs: Sequence[Pair]) -> Normalized:
    """Make all terminals distinct by splitting repeated ones into true twins."""
    for s, t in pairs:
        if s == t:
            raise DegeneratePair(f"pair ({s}, {t}) has equal ends")
        g.check_vertices([s, t])
    back = list(range(g.n))
    seen: dict[int, list[int]] = {}
    out: list[Pair] = []
    for s, t in pairs:
        ends = []
        for v in (s, t):
            copies = seen.setdefault(v, [])
            if not copies:
                copies.append(v)
            else:
                copies.append(len(back))
                back.append(v)
            ends.append(copies[-1])
        out.append((ends[0], ends[1]))
    # a copy is adjacent to its siblings and to every copy of a neighbour
    edges = list(g.edges)
    for c in range(g.n, len(back)):
        v = back[c]
        edges.extend((c, u) for u in range(len(back)) if u != c and (back[u] == v or g.has_edge(back[u], v)))
    return Normalized(Graph.from_edges(len(back), edges), tuple(out), tuple(back))


# ------------------------------------------------------------- brute force


def brute_force_linkage(g: Graph, pairs: Sequence[Pair]) -> Linkage | None:
    """Exhaustive search for internally disjoint s_i-t_i paths, or ``None``."""
    if g.n > BRUTE_MAX_VERTICES:
        raise SizeCap(f"brute-force linkage limited to {BRUTE_MAX_VERTICES} vertices")
    norm = normalize_terminals(g, pairs)
    ng, npairs = norm.graph, norm.pairs
    if ng.m <= EDGE_SUBSET_MAX:
        found = _edge_subset_linkage(ng, npairs)
    else:
        found = _backtrack_linkage(ng, npairs)
    if found is None:
        return None
    return Linkage(tuple(norm.path_back(p) for p in found))


def _edge_subset_linkage(g: Graph, pairs: Sequence[Pair]) -> list[Path] | None:
    # Subsets by increasing size; a subset works when the component of each
    # s_i is exactly a path with ends s_i and t_i.
    for size in range(len(pairs), g.m + 1):
        for subset in itertools.combinations(g.edges, size):
            paths = _subset_paths(g.n, subset, pairs)
            if paths is not None:
                return paths
    return None


def _subset_paths(n: int, subset, pairs: Sequence[Pair]) -> list[Path] | None:
    nbrs: dict[int, list[int]] = {}
    for u, v in subset:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    paths = []
    for s, t in pairs:
        if len(nbrs.get(s, ())) != 1 or len(nbrs.get(t, ())) != 1:
            return None
        walk = [s]
        prev, cur = s, nbrs[s][0]
        while True:
            walk.append(cur)
            nb = nbrs[cur]
            if len(nb) == 1:
                break
            if len(nb) != 2:
                return None
            prev, cur = cur, nb[0] if nb[1] == prev else nb[1]
            if cur == s:
                return None
        if walk[-1] != t:
            return None
        paths.append(tuple(walk))
    return paths


def _backtrack_linkage(g: Graph, pairs: Sequence[Pair]) -> list[Path] | None:
    terminals = 0
    for s, t in pairs:
        terminals |= (1 << s) | (1 << t)
    masks = g.masks
    result: list[Path] = []

    def route(i: int, used: int) -> bool:
        if i == len(pairs):
            return True
        s, t = pairs[i]
        blocked = used | terminals
        stack = [s]

        def extend(v: int, visited: int) -> bool:
            if masks[v] >> t & 1:
                result.append(tuple(stack) + (t,))
                if route(i + 1, used | visited | (1 << t)):
                    return True
                result.pop()
            for w in bits(masks[v] & ~visited & ~blocked):
                stack.append(w)
                if extend(w, visited | (1 << w)):
                    return True
                stack.pop()
            return False

        return extend(s, 1 << s)

    if route(0, 0):
        return result
    return None


# ---------------------------------------------------- paths or independent set


def disjoint_paths_or_is(
    g: Graph, k: int, pairs: Sequence[Pair], *, check_connectivity: bool = True
) -> LinkOutcome:
    """Internally disjoint s_i-t_i paths, or an independent set of size ``k``."""
    ell = len(pairs)
    if k < 1 or ell < 1:
        raise PreconditionError("k and the number of pairs must be positive")
    norm = normalize_terminals(g, pairs)
    if check_connectivity and not connectivity_at_least(g, 10 * ell):
        raise ConnectivityError(f"graph is not {10 * ell}-connected")
    ng, npairs = norm.graph, norm.pairs
    if ng.n <= (k + 2 * ell) ** k:
        found = (
            _edge_subset_linkage(ng, npairs)
            if ng.m <= EDGE_SUBSET_MAX
            else _backtrack_linkage(ng, npairs)
        )
        if found is None:
            raise StateError("no linkage although the graph is highly connected")
        paths = tuple(norm.path_back(p) for p in found)
        return LinkOutcome("linkage", Linkage(paths), stats={"route": "brute"})
    res = ramsey_extract(ng, k, 2 * ell)
    if res.tag == "independent":
        return LinkOutcome("independent_set", independent_set=norm.set_back(res.members),
                           stats={"route": "ramsey"})
    ends = [v for pair in npairs for v in pair]
    fan = terminal_to_clique_paths(ng, ends, res.members)
    paths = []
    for i in range(ell):
        head, tail = fan[2 * i], fan[2 * i + 1]
        paths.append(norm.path_back(head + tuple(reversed(tail))))
    return LinkOutcome("linkage", Linkage(tuple(paths)), stats={"route": "clique"})


# --------------------------------------------------------- spanning linkage


def spanning_requirement(h_graph: Graph, k: int) -> int:
    return max(k + 2, 10) * (h_graph.n + h_graph.m)


def spanning_embedding_or_is(
    h_graph: Graph,
    g: Graph,
    f: Sequence[int],
    k: int,
    *,
    check_connectivity: bool = True,
) -> EmbedOutcome:
    """Spanning TM-embedding of ``h_graph`` with terminal map ``f``, or a ``k``-IS.

    ``stats["iterations"]`` records how many enlargement steps were taken.
    """
    if h_graph.n == 0:
        raise PreconditionError("pattern graph must be nonempty")
    f = tuple(f)
    if len(f) != h_graph.n:
        raise PreconditionError("terminal map must assign every pattern vertex")
    if len(set(f)) != len(f):
        raise PreconditionError("terminal map is not injective")
    g.check_vertices(f)
    if k < 1:
        raise PreconditionError("k must be positive")
    need = spanning_requirement(h_graph, k)
    if check_connectivity and not connectivity_at_least(g, need):
        raise ConnectivityError(f"host graph is not {need}-connected")

    isolated = [x for x in range(h_graph.n) if h_graph.degree(x) == 0]
    drop = {f[x] for x in isolated}
    keep = [v for v in range(g.n) if v not in drop]
    sub, idmap = induced_subgraph(g, keep)
    local = {v: i for i, v in enumerate(idmap)}
    if h_graph.m == 0:
        if sub.n:
            raise PreconditionError("edgeless pattern cannot span a larger host")
        return EmbedOutcome.of_embedding(TMEmbedding.build(f, [], f), iterations=0)

    pairs = [(local[f[x]], local[f[y]]) for x, y in h_graph.edges]
    ell = len(pairs)
    init = disjoint_paths_or_is(sub, k, pairs, check_connectivity=False)
    if init.tag == "independent_set":
        assert init.independent_set is not None
        return EmbedOutcome.of_independent_set(
            [idmap[v] for v in init.independent_set], iterations=0
        )
    assert init.linkage is not None
    paths = [list(p) for p in init.linkage.paths]
    result = _enlarge(sub, paths, k, ell)
    if isinstance(result, tuple):
        ind, iterations = result
        return EmbedOutcome.of_independent_set([idmap[v] for v in ind], iterations=iterations)
    iterations = result
    global_paths = [[idmap[v] for v in p] for p in paths]
    emb = TMEmbedding.from_paths(global_paths, f, extra=drop)
    check = validate_tm_embedding(h_graph, g, emb)
    if not check or emb.size != g.n:
        raise StateError(f"spanning construction produced an invalid model: {check.reason}")
    return EmbedOutcome.of_embedding(emb, iterations=iterations)


def _enlarge(g: Graph, paths: list[list[int]], k: int, ell: int) -> int | tuple[list[int], int]:
    """Grow ``paths`` in place until they span ``g``.

    Returns the number of steps, or ``(independent_set, steps)``.
    """
    span = set()
    for p in paths:
        span.update(p)
    cap = (k + 2) * ell
    steps = 0
    while len(span) < g.n:
        steps += 1
        if steps > g.n:
            raise StateError("enlargement loop exceeded n iterations")
        x = min(v for v in range(g.n) if v not in span)
        targets = sorted(span)
        fan = menger_fan(g, x, targets, cap)
        if len(targets) <= cap:
            p1 = paths[0]
            s1, v = p1[0], p1[1]
            by_end = {q[-1]: q for q in fan.paths}
            if s1 not in by_end or v not in by_end:
                forced = _fan(g, x, [s1, v], 2, avoid=[u for u in targets if u not in (s1, v)])
                by_end = {q[-1]: q for q in forced}
                if len(by_end) < 2:
                    raise ConnectivityError("cannot route the new vertex into the first path")
            q1, q2 = by_end[s1], by_end[v]
            paths[0] = list(reversed(q1)) + list(q2[1:]) + p1[2:]
        else:
            ends = {q[-1]: q for q in fan.paths}
            chosen = None
            for i, p in enumerate(paths):
                hits = [pos for pos in range(1, len(p) - 1) if p[pos] in ends]
                if len(hits) >= k:
                    chosen = (i, hits[:k])
                    break
            if chosen is None:
                raise ConnectivityError("fan too small to enlarge the linkage")
            i, hits = chosen
            p = paths[i]
            succ = [p[pos + 1] for pos in hits]
            pick = next(
                ((a, b) for a, b in itertools.combinations(range(k), 2)
                 if g.has_edge(succ[a], succ[b])),
                None,
            )
            if pick is None:
                return sorted(succ), steps
            a, b = pick
            va, vb = hits[a], hits[b]
            qa, qb = ends[p[va]], ends[p[vb]]
            paths[i] = (
                p[: va + 1]
                + list(reversed(qa))[1:]
                + list(qb[1:])
                + list(reversed(p[va + 1 : vb + 1]))[1:]
                + p[vb + 1 :]
            )
        grown = set()
        for p in paths:
            grown.update(p)
        if len(grown) <= len(span):
            raise StateError("enlargement step did not grow the span")
        span = grown
    return steps


__all__ = [
    "Linkage",
    "LinkOutcome",
    "Normalized",
    "brute_force_linkage",
    "disjoint_paths_or_is",
    "normalize_terminals",
    "spanning_embedding_or_is",
    "spanning_requirement",
    "validate_linkage",
]
