"""Maximum list TM-embedding via cut descriptors around a small separator.

A cut descriptor records how a model meets a separator ``S``: the model
restricted to ``S`` plus a few abstract vertices ``W``, each tagged with the
component of ``G - S`` it will be placed in.  Every component is then filled
by a spanning embedding (or yields an independent set).
"""

from __future__ import annotations

import itertools
import os
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any

from .connectivity import connectivity_at_least, is_c_connected, vertex_connectivity
from .embedding import EmbedOutcome, TMEmbedding, validate_tm_embedding
from .errors import GuardrailAbort, PreconditionError, StateError
from .graph import Graph, bits, connected_components, induced_subgraph, to_mask
from .linkage import spanning_embedding_or_is
from .matching import hopcroft_karp

DEFAULT_MAX_DESCRIPTORS = int(os.environ.get("ALPHAHAM_MAX_DESCRIPTORS", "5000000"))


def normalize_lists(g: Graph, h_graph: Graph, lists) -> tuple[frozenset[int], ...]:
    if lists is None:
        full = frozenset(range(g.n))
        return tuple(full for _ in range(h_graph.n))
    if len(lists) != h_graph.n:
        raise PreconditionError("one list per pattern vertex is required")
    return tuple(frozenset(g.check_vertices(sorted(set(lst)))) for lst in lists)


@dataclass(frozen=True)
class CutDescriptor:
    """``W`` vertices are encoded as ids ``base + j``; smaller ids are vertices of ``S``."""

    base: int
    xi: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    f_w: tuple[int, ...]

    @property
    def w_count(self) -> int:
        return len(self.xi)

    def is_w(self, v: int) -> bool:
        return v >= self.base

    @property
    def s_used(self) -> tuple[int, ...]:
        vs = {v for e in self.edges for v in e} | set(self.f_w)
        return tuple(sorted(v for v in vs if v < self.base))

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset(self.f_w)

    def part(self, i: int) -> list[int]:
        return [self.base + j for j, c in enumerate(self.xi) if c == i]

    def s_neighbors(self, w: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == w and b < self.base:
                out.append(b)
            elif b == w and a < self.base:
                out.append(a)
        return sorted(out)

    def relabel(self, perm: Sequence[int]) -> CutDescriptor:
        """Rename ``W`` vertex ``j`` to ``perm[j]``."""
        def m(v: int) -> int:
            return self.base + perm[v - self.base] if v >= self.base else v

        xi = [0] * len(self.xi)
        for j, c in enumerate(self.xi):
            xi[perm[j]] = c
        edges = tuple(sorted(tuple(sorted((m(a), m(b)))) for a, b in self.edges))
        return CutDescriptor(self.base, tuple(xi), edges, tuple(m(v) for v in self.f_w))

    def model_graph(self) -> tuple[Graph, list[int]]:
        """``M_W`` as a graph on local ids, plus the local -> descriptor id map."""
        vs = sorted({v for e in self.edges for v in e} | set(self.f_w))
        local = {v: i for i, v in enumerate(vs)}
        return Graph.from_edges(len(vs), [(local[a], local[b]) for a, b in self.edges]), vs


def check_descriptor(
    d: CutDescriptor, h_graph: Graph, g: Graph, s: Sequence[int], lists, t: int
) -> str | None:
    """Name of the first failing property among CD1-CD4, or ``None``."""
    sset = set(s)
    lists = normalize_lists(g, h_graph, lists)
    for a, b in d.edges:
        for v in (a, b):
            if not d.is_w(v) and v not in sset:
                return "vertex"
        if not d.is_w(a) and not d.is_w(b) and not g.has_edge(a, b):
            return "CD4"
    for hv, v in enumerate(d.f_w):
        if not d.is_w(v) and v not in lists[hv]:
            return "CD4"
    terms = d.terminals
    for j in range(d.w_count):
        w = d.base + j
        if w not in terms and not d.s_neighbors(w):
            return "CD2"
        if not 0 <= d.xi[j] < t:
            return "xi"
    for a, b in d.edges:
        if d.is_w(a) and d.is_w(b) and d.xi[a - d.base] != d.xi[b - d.base]:
            return "CD3"
    mg, vs = d.model_graph()
    if len(vs) != len(d.s_used) + d.w_count:
        return "CD1"
    local = {v: i for i, v in enumerate(vs)}
    emb = TMEmbedding.build(range(len(vs)), mg.edges, [local[v] for v in d.f_w])
    if not validate_tm_embedding(h_graph, mg, emb):
        return "CD1"
    return None


def enumerate_cut_descriptors(
    h_graph: Graph,
    g: Graph,
    s: Sequence[int],
    lists=None,
    t: int | None = None,
    *,
    components: Sequence[Sequence[int]] | None = None,
    prune: bool = False,
    labeled: bool = False,
    symmetries: Sequence[Sequence[int]] = (),
) -> Iterator[CutDescriptor]:
    """Stream every cut descriptor satisfying CD1-CD4.

    Descriptors are built constructively: first ``f_W`` (each pattern vertex
    goes to an unused vertex of ``S`` from its list or to a fresh ``W``
    vertex), then one path of ``M_W`` per pattern edge.  ``W`` vertices get
    canonical labels in order of creation, so each descriptor is produced once
    up to renaming ``W``; ``labeled=True`` additionally yields every distinct
    renaming.  ``prune=True`` drops descriptors that cannot satisfy CD5
    (needs ``components``).  ``symmetries`` lists automorphisms of the
    pattern; a terminal placement is skipped when some automorphism maps it to
    a lexicographically smaller one (sound only when all lists are equal).
    """
    S = sorted(set(g.check_vertices(s)))
    sset = set(S)
    lists = normalize_lists(g, h_graph, lists)
    if components is None:
        components = connected_components(g, [v for v in range(g.n) if v not in sset])
    if t is None:
        t = len(components)
    comp_masks = [to_mask(c) for c in components] + [0] * (t - len(components))
    comp_sizes = [len(c) for c in components] + [0] * (t - len(components))
    base = g.n
    w_bound = h_graph.n + h_graph.m + 2 * len(S)
    list_masks = [to_mask(lst) for lst in lists]

    f_w: list[int] = []
    xi: list[int] = []
    cand: list[int] = []  # possible tau images per W vertex (pruning only)
    per_comp = [0] * t
    used_s: set[int] = set()
    edges: list[tuple[int, int]] = []
    term_set: set[int] = set()

    def new_w(i: int, mask: int) -> int:
        xi.append(i)
        cand.append(mask)
        per_comp[i] += 1
        return base + len(xi) - 1

    def drop_w() -> None:
        per_comp[xi.pop()] -= 1
        cand.pop()

    def comp_ok(i: int) -> bool:
        return not prune or per_comp[i] < comp_sizes[i]

    def link_ok(a: int, b: int) -> bool:
        aw, bw = a >= base, b >= base
        if not aw and not bw:
            return g.has_edge(a, b)
        if aw and bw:
            return xi[a - base] == xi[b - base]
        if prune:
            w, sv = (a, b) if aw else (b, a)
            return cand[w - base] & g.masks[sv] != 0
        return True

    def add_edge(a: int, b: int) -> int | None:
        # returns previous candidate mask of the W end for undo
        edges.append((a, b) if a < b else (b, a))
        aw, bw = a >= base, b >= base
        if aw != bw:
            w, sv = (a, b) if aw else (b, a)
            old = cand[w - base]
            cand[w - base] = old & g.masks[sv]
            return old
        return None

    def undo_edge(a: int, b: int, old: int | None) -> None:
        edges.pop()
        if old is not None:
            w = a if a >= base else b
            cand[w - base] = old

    def emit() -> Iterator[CutDescriptor]:
        d = CutDescriptor(base, tuple(xi), tuple(sorted(edges)), tuple(f_w))
        if d.w_count > w_bound:
            raise StateError("descriptor exceeds the |W| bound")
        if not labeled:
            yield d
            return
        seen = set()
        for perm in itertools.permutations(range(d.w_count)):
            r = d.relabel(perm)
            key = (r.xi, r.edges, r.f_w)
            if key not in seen:
                seen.add(key)
                yield r

    def smallest_in_orbit() -> bool:
        keys = [v if v < base else base + xi[v - base] for v in f_w]
        return all(keys <= [keys[x] for x in sigma] for sigma in symmetries)

    def assign(hv: int) -> Iterator[CutDescriptor]:
        if hv == h_graph.n:
            if smallest_in_orbit():
                yield from route(0)
            return
        for sv in S:
            if sv not in used_s and sv in lists[hv]:
                used_s.add(sv)
                f_w.append(sv)
                term_set.add(sv)
                yield from assign(hv + 1)
                term_set.discard(sv)
                f_w.pop()
                used_s.discard(sv)
        if len(xi) >= w_bound:
            return
        for i in range(t):
            mask = comp_masks[i] & list_masks[hv]
            if prune and (not mask or not comp_ok(i)):
                continue
            w = new_w(i, mask)
            f_w.append(w)
            term_set.add(w)
            yield from assign(hv + 1)
            term_set.discard(w)
            f_w.pop()
            drop_w()

    def route(e: int) -> Iterator[CutDescriptor]:
        if e == h_graph.m:
            yield from emit()
            return
        x, y = h_graph.edges[e]
        yield from walk(e, f_w[x], f_w[y], False)

    def walk(e: int, cur: int, end: int, need_s: bool) -> Iterator[CutDescriptor]:
        # ``need_s``: ``cur`` is a connector whose only neighbour so far is in W
        cur_w = cur >= base
        if link_ok(cur, end) and not (need_s and end >= base):
            old = add_edge(cur, end)
            if not prune or old is None or cand[(cur if cur_w else end) - base]:
                yield from route(e + 1)
            undo_edge(cur, end, old)
        for sv in S:
            if sv in used_s or not link_ok(cur, sv):
                continue
            used_s.add(sv)
            old = add_edge(cur, sv)
            if not prune or old is None or cand[cur - base]:
                yield from walk(e, sv, end, False)
            undo_edge(cur, sv, old)
            used_s.discard(sv)
        if need_s or len(xi) >= w_bound:
            return
        choices = [xi[cur - base]] if cur_w else range(t)
        for i in choices:
            if prune and not comp_ok(i):
                continue
            w = new_w(i, comp_masks[i])
            old = add_edge(cur, w)
            if not prune or old is None or cand[w - base]:
                yield from walk(e, w, end, cur_w)
            undo_edge(cur, w, old)
            drop_w()

    yield from assign(0)


def pattern_automorphisms(h_graph: Graph, limit: int = 720) -> list[tuple[int, ...]]:
    """Up to ``limit`` non-identity automorphisms of ``h_graph`` by backtracking.

    Any subset of the automorphism group keeps the orbit pruning sound: every
    skipped placement has a strictly smaller image, and following images ends
    at a placement that is kept.
    """
    n = h_graph.n
    out: list[tuple[int, ...]] = []
    image: list[int] = []
    taken = [False] * n

    def extend() -> bool:
        x = len(image)
        if x == n:
            if image != list(range(n)):
                out.append(tuple(image))
            return len(out) >= limit
        for y in range(n):
            if taken[y] or h_graph.degree(y) != h_graph.degree(x):
                continue
            if any(h_graph.has_edge(x, z) != h_graph.has_edge(y, image[z]) for z in range(x)):
                continue
            taken[y] = True
            image.append(y)
            if extend():
                return True
            image.pop()
            taken[y] = False
        return False

    extend()
    return out


def tau_assignment(
    d: CutDescriptor,
    g: Graph,
    s: Sequence[int],
    lists,
    components: Sequence[Sequence[int]],
    h_graph: Graph | None = None,
) -> tuple[int, ...] | None:
    """Injective placement of ``W`` into the components (CD5), or ``None``."""
    sset = set(s)
    if h_graph is not None:
        lists = normalize_lists(g, h_graph, lists)
    term_of = {v: hv for hv, v in enumerate(d.f_w)}
    left = list(range(d.w_count))
    adjacency = {}
    for j in left:
        w = d.base + j
        allowed = to_mask(components[d.xi[j]])
        if w in term_of and lists is not None:
            allowed &= to_mask(lists[term_of[w]])
        for sv in d.s_neighbors(w):
            allowed &= g.masks[sv]
        adjacency[j] = [v for v in bits(allowed) if v not in sset]
    match = hopcroft_karp(left, adjacency)
    if len(match) < len(left):
        return None
    return tuple(match[j] for j in left)


# ---------------------------------------------------------------- merging


@dataclass
class MergeStats:
    descriptors: int = 0
    max_w: int = 0
    w_bound: int = 0
    spanning_calls: int = 0
    assembled: int = 0
    extra: dict[str, Any] = field(default_factory=dict)


def merge_solve(
    g: Graph,
    h_graph: Graph,
    lists,
    k: int,
    s: Sequence[int],
    *,
    prune: bool = True,
    skip_dominated: bool = True,
    symmetry: bool = True,
    max_descriptors: int | None = None,
    stats: MergeStats | None = None,
) -> EmbedOutcome:
    """Maximum list TM-embedding of ``h_graph`` given a separator ``s``."""
    if k < 1:
        raise PreconditionError("k must be positive")
    lists = normalize_lists(g, h_graph, lists)
    S = sorted(set(g.check_vertices(s)))
    stats = stats if stats is not None else MergeStats()
    if h_graph.n == 0:
        return EmbedOutcome.of_embedding(TMEmbedding.build([], [], []))
    if any(not lst for lst in lists):
        return EmbedOutcome.infeasible()
    sset = set(S)
    comps = connected_components(g, [v for v in range(g.n) if v not in sset])
    hsize = h_graph.n + h_graph.m
    need = max(k + 2, 10) * (3 * hsize + 3 * len(S))
    subgraphs = []
    for c in comps:
        sub, idmap = induced_subgraph(g, c)
        if not connectivity_at_least(sub, need):
            raise PreconditionError(f"component {c[0]}.. is not {need}-connected")
        subgraphs.append((sub, idmap, {v: i for i, v in enumerate(idmap)}))
    stats.w_bound = hsize + 2 * len(S)
    cap = max_descriptors if max_descriptors is not None else DEFAULT_MAX_DESCRIPTORS

    sym = pattern_automorphisms(h_graph) if symmetry and len(set(lists)) == 1 else []
    best: TMEmbedding | None = None
    cache: dict[Any, EmbedOutcome] = {}
    for d in enumerate_cut_descriptors(
        h_graph, g, S, lists, components=comps, prune=prune, symmetries=sym
    ):
        stats.descriptors += 1
        stats.max_w = max(stats.max_w, d.w_count)
        if d.w_count > stats.w_bound:
            raise StateError("descriptor exceeds the |W| bound")
        if stats.descriptors > cap:
            raise GuardrailAbort(f"more than {cap} cut descriptors")
        parts = [d.part(i) for i in range(len(comps))]
        wedges = [(a, b) for a, b in d.edges if d.is_w(a) and d.is_w(b)]
        hit = [any(d.xi[a - d.base] == i for a, _ in wedges) for i in range(len(comps))]
        potential = len(d.s_used) + sum(
            len(comps[i]) if hit[i] else len(parts[i]) for i in range(len(comps))
        )
        if skip_dominated and best is not None and potential <= best.size:
            continue
        tau = tau_assignment(d, g, S, lists, comps)
        if tau is None:
            continue
        place = {d.base + j: v for j, v in enumerate(tau)}
        vertices = set(d.s_used)
        edges = [(a, b) for a, b in d.edges if not (d.is_w(a) and d.is_w(b))]
        edges = [(place.get(a, a), place.get(b, b)) for a, b in edges]
        for i, part in enumerate(parts):
            if not hit[i]:
                vertices.update(place[w] for w in part)
                continue
            sub, idmap, local = subgraphs[i]
            pos = {w: j for j, w in enumerate(part)}
            h_i = Graph.from_edges(
                len(part),
                [(pos[a], pos[b]) for a, b in wedges if d.xi[a - d.base] == i],
            )
            f_i = tuple(local[place[w]] for w in part)
            key = (i, h_i.edges, f_i)
            out = cache.get(key)
            if out is None:
                stats.spanning_calls += 1
                out = spanning_embedding_or_is(h_i, sub, f_i, k, check_connectivity=False)
                cache[key] = out
            if out.tag == "independent_set":
                assert out.independent_set is not None
                return EmbedOutcome.of_independent_set(
                    [idmap[v] for v in out.independent_set], **_stats_dict(stats)
                )
            assert out.embedding is not None
            m_i = out.embedding.remap(idmap)
            vertices.update(m_i.vertices)
            edges.extend(m_i.edges)
        f = tuple(place.get(v, v) for v in d.f_w)
        emb = TMEmbedding.build(vertices, edges, f)
        check = validate_tm_embedding(h_graph, g, emb, lists)
        if not check:
            raise StateError(f"assembled model is invalid: {check.reason} {check.detail}")
        stats.assembled += 1
        if best is None or emb.size > best.size:
            best = emb
            if best.size == g.n:
                break
    if best is None:
        return EmbedOutcome.infeasible(**_stats_dict(stats))
    return EmbedOutcome.of_embedding(best, **_stats_dict(stats))


def _stats_dict(stats: MergeStats) -> dict[str, Any]:
    return {
        "descriptors": stats.descriptors,
        "max_w": stats.max_w,
        "w_bound": stats.w_bound,
        "spanning_calls": stats.spanning_calls,
        **stats.extra,
    }


# ------------------------------------------------------- separator loop


def separator_loop(g: Graph, h_graph: Graph, k: int) -> tuple[list[int] | None, list[int], dict[str, Any]]:
    """Grow ``S`` until all components of ``G - S`` are highly connected.

    Returns ``(independent_set, S, info)``; the first entry is ``None`` when
    the loop ended with well-connected components.
    """
    hsize = h_graph.n + h_graph.m
    alpha = 3 * max(k + 2, 10)
    S: list[int] = []
    sizes: list[int] = []
    j = 0
    while True:
        j += 1
        if j > k:
            raise StateError("separator loop exceeded k iterations")
        if len(S) > (alpha + 2) ** j * hsize:
            raise StateError("separator grew beyond its size bound")
        sizes.append(len(S))
        sset = set(S)
        comps = connected_components(g, [v for v in range(g.n) if v not in sset])
        if len(comps) >= k:
            ind = [c[0] for c in comps[:k]]
            return ind, S, {"iterations": j, "s_sizes": sizes}
        kappa = alpha * (hsize + len(S))
        bad = None
        for c in comps:
            sub, idmap = induced_subgraph(g, c)
            if sub.is_complete():
                continue
            ok, sep = is_c_connected(sub, kappa)
            if not ok:
                if sep is None:
                    sep = vertex_connectivity(sub).separator or ()
                bad = [idmap[v] for v in sep]
                break
        if bad is None:
            return None, S, {"iterations": j, "s_sizes": sizes}
        S = sorted(sset | set(bad))


def max_list_tm_embedding(
    g: Graph,
    h_graph: Graph,
    lists,
    k: int,
    *,
    max_descriptors: int | None = None,
    prune: bool = True,
) -> EmbedOutcome:
    """Maximum list TM-embedding, an infeasibility report, or a ``k``-IS."""
    if k < 1:
        raise PreconditionError("k must be positive")
    lists = normalize_lists(g, h_graph, lists)
    if h_graph.n == 0:
        return EmbedOutcome.of_embedding(TMEmbedding.build([], [], []), iterations=0)
    ind, S, info = separator_loop(g, h_graph, k)
    if ind is not None:
        return EmbedOutcome.of_independent_set(ind, **info)
    stats = MergeStats(extra={"iterations": info["iterations"], "s_sizes": info["s_sizes"], "separator": list(S)})
    return merge_solve(
        g, h_graph, lists, k, S, prune=prune, max_descriptors=max_descriptors, stats=stats
    )


__all__ = [
    "CutDescriptor",
    "MergeStats",
    "check_descriptor",
    "enumerate_cut_descriptors",
    "max_list_tm_embedding",
    "merge_solve",
    "normalize_lists",
    "pattern_automorphisms",
    "separator_loop",
    "tau_assignment",
]
