"""Path covers below the Gallai-Milgram bound.

The driver starts from the trivial cover, applies the reduction rules in a
fixed order and finishes with one of three solution subroutines.  Rules are
numbered RR1..RR4, subroutines Sub1..Sub3.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

from .embedding import TMEmbedding
from .errors import PreconditionError, StateError
from .graph import (
    Graph,
    bits,
    connected_components,
    disjoint_union,
    empty_graph,
    complete_graph,
    induced_subgraph,
    is_clique,
    is_connected,
    is_independent_set,
    to_mask,
)
from .merging import max_list_tm_embedding

Path = tuple[int, ...]
Cover = tuple[Path, ...]


# ------------------------------------------------------------------ state


def is_special(g: Graph, path: Sequence[int]) -> bool:
    """Endpoints coincide, form the only edge, or are adjacent in ``g``."""
    return len(path) <= 2 or g.has_edge(path[0], path[-1])


def validate_cover(g: Graph, paths: Sequence[Sequence[int]]) -> bool:
    """Paths are vertex-disjoint walks along edges of ``g`` covering ``V(g)``."""
    seen: set[int] = set()
    for p in paths:
        if not p:
            return False
        for v in p:
            if not (0 <= v < g.n) or v in seen:
                return False
            seen.add(v)
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            return False
    return len(seen) == g.n


@dataclass(frozen=True)
class CoverState:
    """A path cover; ``special[i]`` caches the flag of ``paths[i]``."""

    paths: Cover
    special: tuple[bool, ...]

    @classmethod
    def of(cls, g: Graph, paths: Sequence[Sequence[int]]) -> CoverState:
        ps = tuple(tuple(p) for p in paths)
        return cls(ps, tuple(is_special(g, p) for p in ps))

    @classmethod
    def trivial(cls, g: Graph) -> CoverState:
        return cls.of(g, [(v,) for v in range(g.n)])

    @property
    def m(self) -> int:
        return len(self.paths)

    @property
    def special_count(self) -> int:
        return sum(self.special)

    def check(self, g: Graph) -> None:
        if not validate_cover(g, self.paths):
            raise StateError("paths do not partition the vertex set")
        if self.special != tuple(is_special(g, p) for p in self.paths):
            raise StateError("special flags are stale")


@dataclass(frozen=True)
class ReductionStep:
    kind: Literal["reduced", "sub1", "sub2", "irreducible"]
    state: CoverState
    rule: str = ""
    independent_set: tuple[int, ...] | None = None


def _rotate_to_end(g: Graph, path: Path, u: int) -> Path:
    """Reorder a special path so that it ends at ``u``.

    Paths with at most two vertices are simply oriented.  Longer ones are
    closed into a cycle and the edge between ``u`` and its successor toward
    ``t`` (or its only path neighbour when ``u`` is an endpoint) is removed.
    """
    if len(path) <= 2:
        return path if path[-1] == u else path[::-1]
    a = path.index(u)
    if a == len(path) - 1:
        return path
    # drop edge (path[a], path[a+1]) from the closed cycle
    return path[a + 1 :] + path[: a + 1]


def _orient_end(path: Path, u: int) -> Path:
    return path if path[-1] == u else path[::-1]


def _replace(state: CoverState, g: Graph, drop: Sequence[int], new: Sequence[Path]) -> CoverState:
    """Put ``new`` at the position of the first dropped path, keep the rest in order."""
    first = min(drop)
    out: list[Path] = []
    for i, p in enumerate(state.paths):
        if i == first:
            out.extend(new)
        elif i not in drop:
            out.append(p)
    return CoverState.of(g, out)


def _rr1(g: Graph, st: CoverState) -> CoverState | None:
    ps = st.paths
    for i in range(st.m):
        for j in range(i + 1, st.m):
            for u in dict.fromkeys((ps[i][0], ps[i][-1])):
                for v in dict.fromkeys((ps[j][0], ps[j][-1])):
                    if g.has_edge(u, v):
                        joined = _orient_end(ps[i], u) + _orient_end(ps[j], v)[::-1]
                        return _replace(st, g, (i, j), [joined])
    return None


def _sub1(g: Graph, st: CoverState, k: int) -> tuple[int, ...] | None:
    usual = [i for i in range(st.m) if not st.special[i]]
    if len(usual) < k:
        return None
    return tuple([p[0] for p in st.paths] + [st.paths[i][-1] for i in usual[:k]])


def _rr2(g: Graph, st: CoverState) -> CoverState | None:
    ps = st.paths
    for i in range(st.m):
        if not st.special[i] or len(ps[i]) < 3:
            continue
        for u in ps[i]:
            for j in range(st.m):
                if j == i:
                    continue
                for w in dict.fromkeys((ps[j][0], ps[j][-1])):
                    if g.has_edge(u, w):
                        joined = _rotate_to_end(g, ps[i], u) + _orient_end(ps[j], w)[::-1]
                        return _replace(st, g, (i, j), [joined])
    return None


def _rr3(g: Graph, st: CoverState) -> CoverState | None:
    ps = st.paths
    big = [i for i in range(st.m) if st.special[i] and len(ps[i]) >= 3]
    for x, i in enumerate(big):
        for j in big[x + 1 :]:
            for ui in ps[i]:
                for uj in ps[j]:
                    if g.has_edge(ui, uj):
                        pj = _rotate_to_end(g, ps[j], uj)[::-1]
                        joined = _rotate_to_end(g, ps[i], ui) + pj
                        return _replace(st, g, (i, j), [joined])
    return None


def _sub2(g: Graph, st: CoverState, k: int) -> tuple[int, ...] | None:
    non_clique = [i for i in range(st.m) if st.special[i] and not is_clique(g, st.paths[i])]
    if len(non_clique) < 2 * k:
        return None
    ind: list[int] = []
    for i in range(st.m):
        if not st.special[i]:
            continue
        p = st.paths[i]
        if i in non_clique:
            pair = next(
                (a, b)
                for x, a in enumerate(sorted(p))
                for b in sorted(p)[x + 1 :]
                if not g.has_edge(a, b)
            )
            ind.extend(pair)
        else:
            ind.append(p[0])
    return tuple(ind)


def _rr4(g: Graph, st: CoverState) -> CoverState | None:
    ps = st.paths
    masks = [to_mask(p) for p in ps]
    specials = [i for i in range(st.m) if st.special[i]]
    usual = [i for i in range(st.m) if not st.special[i]]
    for i in specials:
        for j in specials:
            if j == i:
                continue
            for ell in usual:
                pl = ps[ell]
                hits_i = [a for a, x in enumerate(pl) if g.masks[x] & masks[i]]
                hits_j = [b for b, x in enumerate(pl) if g.masks[x] & masks[j]]
                if not hits_i or not hits_j:
                    continue
                a = hits_i[0]
                later = [b for b in hits_j if b > a]
                if not later:
                    continue
                b = later[0]
                xi, xj = pl[a], pl[b]
                ui = next(u for u in ps[i] if g.has_edge(u, xi))
                uj = next(u for u in ps[j] if g.has_edge(u, xj))
                qi = pl[: a + 1] + _rotate_to_end(g, ps[i], ui)[::-1]
                qj = _rotate_to_end(g, ps[j], uj) + pl[b:]
                new = [qi, qj]
                if b > a + 1:
                    new.append(pl[a + 1 : b])
                return _replace(st, g, (i, j, ell), new)
    return None


def apply_reductions(g: Graph, st: CoverState, k: int) -> ReductionStep:
    """Fire the first applicable rule in the order RR1, Sub1, RR2, RR3, Sub2, RR4."""
    st.check(g)
    if k < 1:
        raise PreconditionError("k must be positive")
    nxt = _rr1(g, st)
    if nxt is not None:
        return _reduced(g, st, nxt, "RR1")
    ind = _sub1(g, st, k)
    if ind is not None:
        return ReductionStep("sub1", st, "Sub1", ind)
    for name, rule in (("RR2", _rr2), ("RR3", _rr3)):
        nxt = rule(g, st)
        if nxt is not None:
            return _reduced(g, st, nxt, name)
    ind = _sub2(g, st, k)
    if ind is not None:
        return ReductionStep("sub2", st, "Sub2", ind)
    nxt = _rr4(g, st)
    if nxt is not None:
        return _reduced(g, st, nxt, "RR4")
    return ReductionStep("irreducible", st)


def _reduced(g: Graph, old: CoverState, new: CoverState, rule: str) -> ReductionStep:
    new.check(g)
    if rule == "RR4":
        if new.m > old.m or new.special_count >= old.special_count:
            raise StateError("RR4 did not reduce the special paths")
    elif new.m != old.m - 1:
        raise StateError(f"{rule} did not merge two paths")
    return ReductionStep("reduced", new, rule)


def gallai_milgram_cover(g: Graph) -> Cover:
    """Merge paths with adjacent endpoints, starting from single vertices."""
    st = CoverState.trivial(g)
    while (nxt := _rr1(g, st)) is not None:
        st = nxt
    return st.paths


# ---------------------------------------------------------- clique marking


def selected_cliques(g: Graph, s: Sequence[int], cliques: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Indices of cliques that may carry non-degenerate cover paths.

    Every vertex of ``s`` marks up to ``2|s|`` cliques holding one of its
    neighbours; the result has at most ``2|s|^2`` indices.
    """
    smask = to_mask(g.check_vertices(s))
    cmasks = []
    seen = 0
    for c in cliques:
        c = g.check_vertices(c)
        cm = to_mask(c)
        if not c or cm & (seen | smask) or not is_clique(g, c):
            raise PreconditionError("cliques must be disjoint non-empty cliques outside S")
        boundary = 0
        for v in c:
            boundary |= g.masks[v]
        if boundary & ~(cm | smask):
            raise PreconditionError("a clique is not a component of G - S")
        seen |= cm
        cmasks.append(cm)
    quota = 2 * smask.bit_count()
    marked: set[int] = set()
    for v in bits(smask):
        hit = [i for i, cm in enumerate(cmasks) if g.masks[v] & cm]
        marked.update(hit[:quota])
    return tuple(sorted(marked))


# ------------------------------------------------------------- outcomes


@dataclass(frozen=True)
class BelowGMOutcome:
    cover: Cover
    independent_set: tuple[int, ...] | None = None
    stats: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def minimum(self) -> bool:
        return self.independent_set is None

    def to_json(self) -> dict[str, Any]:
        cert: Any = "minimum"
        if self.independent_set is not None:
            cert = {"independent_set": list(self.independent_set)}
        return {"paths": [list(p) for p in self.cover], "certificate": cert}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> BelowGMOutcome:
        cert = data["certificate"]
        ind = None
        if cert != "minimum":
            ind = tuple(int(v) for v in cert["independent_set"])
        return cls(tuple(tuple(int(v) for v in p) for p in data["paths"]), ind)


def check_outcome(g: Graph, k: int, out: BelowGMOutcome) -> bool:
    """Structural part of the contract (the minimum claim needs an oracle)."""
    if not validate_cover(g, out.cover):
        return False
    if out.independent_set is None:
        return True
    ind = out.independent_set
    return (
        len(set(ind)) == len(ind) == len(out.cover) + k
        and all(0 <= v < g.n for v in ind)
        and is_independent_set(g, ind)
    )


def _trim(ind: Sequence[int], size: int) -> tuple[int, ...]:
    out = tuple(sorted(set(ind)))
    if len(out) < size:
        raise StateError("independent set is smaller than promised")
    return out[:size]


# -------------------------------------------------------- small covers


def matching_pattern(i: int, j: int) -> Graph:
    """``j`` isolated vertices followed by ``i - j`` disjoint edges."""
    return disjoint_union(empty_graph(j), *[complete_graph(2)] * (i - j))


def embedding_to_cover(g: Graph, emb: TMEmbedding) -> Cover:
    """Split a spanning model made of paths into its components."""
    sub = Graph.from_edges(g.n, emb.edges)
    paths = []
    for comp in connected_components(sub):
        ends = [v for v in comp if sub.degree(v) <= 1]
        start = min(ends)
        walk, prev = [start], -1
        while True:
            nxt = [w for w in sub.neighbors(walk[-1]) if w != prev]
            if not nxt:
                break
            prev = walk[-1]
            walk.append(nxt[0])
        paths.append(tuple(walk))
    return tuple(paths)


def solve_small_cover(
    g: Graph,
    k: int,
    cover: Sequence[Sequence[int]],
    *,
    max_descriptors: int | None = None,
) -> BelowGMOutcome:
    """Minimum cover through spanning matchings, or the input cover plus a ``p'+k`` IS."""
    if not validate_cover(g, cover):
        raise PreconditionError("input is not a path cover")
    cover = tuple(tuple(p) for p in cover)
    if g.m == 0:
        return BelowGMOutcome(tuple((v,) for v in range(g.n)), stats={"grid": []})
    p = len(cover)
    param = p + k
    tried = []
    for i in range(1, p + 1):
        for j in range(i):
            tried.append((i, j))
            h = matching_pattern(i, j)
            out = max_list_tm_embedding(g, h, None, param, max_descriptors=max_descriptors)
            if out.tag == "independent_set":
                assert out.independent_set is not None
                ind = _trim(out.independent_set, param)
                return BelowGMOutcome(cover, ind, stats={"grid": tried})
            if out.tag == "embedding" and out.embedding is not None and out.embedding.size == g.n:
                paths = embedding_to_cover(g, out.embedding)
                if len(paths) != i or not validate_cover(g, paths):
                    raise StateError("spanning model does not convert to a cover")
                return BelowGMOutcome(paths, stats={"grid": tried})
    raise StateError("no spanning matching model up to the size of the input cover")


def cover_at_most(
    g: Graph,
    p: int,
    k: int,
    *,
    max_descriptors: int | None = None,
) -> tuple[Literal["yes", "no", "independent_set"], Cover | tuple[int, ...] | None]:
    """Decide whether ``g`` has a cover with at most ``p`` paths."""
    if p < 1:
        raise PreconditionError("p must be positive")
    gm = gallai_milgram_cover(g)
    if len(gm) <= p:
        return "yes", gm
    if g.m == 0:
        return "no", None
    for i in range(1, p + 1):
        for j in range(i):
            out = max_list_tm_embedding(
                g, matching_pattern(i, j), None, k, max_descriptors=max_descriptors
            )
            if out.tag == "independent_set":
                return "independent_set", out.independent_set
            if out.tag == "embedding" and out.embedding is not None and out.embedding.size == g.n:
                return "yes", embedding_to_cover(g, out.embedding)
    return "no", None


# ---------------------------------------------------------------- driver


def connector_separator(g: Graph, st: CoverState) -> list[int]:
    """One vertex per usual path that has exactly one connector."""
    special_mask = 0
    for p, sp in zip(st.paths, st.special):
        if sp:
            special_mask |= to_mask(p)
    s = []
    for p, sp in zip(st.paths, st.special):
        if sp:
            continue
        conn = [v for v in p if g.masks[v] & special_mask]
        if len(conn) == 1:
            s.append(conn[0])
    return sorted(s)


def below_gm(g: Graph, k: int, *, max_descriptors: int | None = None) -> BelowGMOutcome:
    """A minimum path cover, or a cover with an IS of size ``|cover| + k``."""
    if k < 1:
        raise PreconditionError("k must be positive")
    if g.n == 0:
        return BelowGMOutcome(())
    if not is_connected(g):
        return _per_component(g, k, max_descriptors)
    st = CoverState.trivial(g)
    rules: list[str] = []
    while True:
        step = apply_reductions(g, st, k)
        if step.kind == "reduced":
            rules.append(step.rule)
            st = step.state
            continue
        if step.kind in ("sub1", "sub2"):
            assert step.independent_set is not None
            ind = _trim(step.independent_set, st.m + k)
            return BelowGMOutcome(st.paths, ind, stats={"rules": rules, "end": step.rule})
        break
    return _final_subroutine(g, st, k, rules, max_descriptors)


def _final_subroutine(
    g: Graph, st: CoverState, k: int, rules: list[str], max_descriptors: int | None
) -> BelowGMOutcome:
    S = connector_separator(g, st)
    if len(S) >= k:
        raise StateError("connector separator is too large")
    h = max(0, st.m - 4 * k)
    sset = set(S)
    comps = {tuple(c) for c in connected_components(g, [v for v in range(g.n) if v not in sset])}
    clique_paths = sorted(
        (
            i
            for i, p in enumerate(st.paths)
            if st.special[i] and tuple(sorted(p)) in comps and is_clique(g, p)
        ),
        key=lambda i: min(st.paths[i]),
    )
    if len(clique_paths) < h:
        raise StateError("fewer clique components than the final subroutine requires")
    chosen = clique_paths[:h]
    marked = selected_cliques(g, S, [st.paths[i] for i in chosen])
    deleted = [chosen[x] for x in range(h) if x not in set(marked)]
    gone = set()
    for i in deleted:
        gone.update(st.paths[i])
    keep = [v for v in range(g.n) if v not in gone]
    sub, idmap = induced_subgraph(g, keep)
    local = {v: x for x, v in enumerate(idmap)}
    sub_cover = [tuple(local[v] for v in p) for i, p in enumerate(st.paths) if i not in set(deleted)]
    inner = solve_small_cover(sub, 2 * k, sub_cover, max_descriptors=max_descriptors)
    cover = tuple(tuple(idmap[v] for v in p) for p in inner.cover) + tuple(
        st.paths[i] for i in deleted
    )
    stats = {
        "rules": rules,
        "end": "Sub3",
        "separator": S,
        "h": h,
        "marked": len(marked),
        "reduced_paths": len(sub_cover),
        "grid": inner.stats.get("grid", []),
    }
    if inner.independent_set is None:
        return BelowGMOutcome(cover, stats=stats)
    ind = {idmap[v] for v in inner.independent_set} - sset
    ind.update(min(st.paths[i]) for i in deleted)
    return BelowGMOutcome(cover, _trim(ind, len(cover) + k), stats=stats)


def _per_component(g: Graph, k: int, max_descriptors: int | None) -> BelowGMOutcome:
    cover: list[Path] = []
    ind: list[int] = []
    any_is = False
    for comp in connected_components(g):
        sub, idmap = induced_subgraph(g, comp)
        out = below_gm(sub, k, max_descriptors=max_descriptors)
        paths = [tuple(idmap[v] for v in p) for p in out.cover]
        cover.extend(paths)
        if out.independent_set is not None:
            any_is = True
            ind.extend(idmap[v] for v in out.independent_set)
        else:
            # starts of a minimum cover are pairwise non-adjacent
            ind.extend(p[0] for p in paths)
    if not any_is:
        return BelowGMOutcome(tuple(cover), stats={"components": True})
    if not is_independent_set(g, ind):
        raise StateError("combined independent set is not independent")
    return BelowGMOutcome(tuple(cover), _trim(ind, len(cover) + k), stats={"components": True})


__all__ = [
    "BelowGMOutcome",
    "CoverState",
    "ReductionStep",
    "apply_reductions",
    "below_gm",
    "check_outcome",
    "connector_separator",
    "cover_at_most",
    "embedding_to_cover",
    "gallai_milgram_cover",
    "is_special",
    "matching_pattern",
    "selected_cliques",
    "solve_small_cover",
    "validate_cover",
]
