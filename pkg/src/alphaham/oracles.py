"""Exponential reference solvers used to check the real algorithms.

Each oracle has a primary method and an independent second method
(``method="alt"``) so the two can be cross-checked on small graphs.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from .embedding import TMEmbedding
from .errors import SizeCap
from .graph import Graph, bits, to_mask

_DEFAULT_CAPS = {"alpha": 24, "pc": 12, "ham": 14, "embed": 9}


def cap(name: str) -> int:
    """Size cap for an oracle, overridable through ``ALPHAHAM_ORACLE_CAP``.

    The variable holds either one integer (applied to every oracle) or
    comma-separated ``name=value`` items.
    """
    raw = os.environ.get("ALPHAHAM_ORACLE_CAP", "").strip()
    if raw:
        if "=" not in raw:
            return int(raw)
        for item in raw.split(","):
            key, _, val = item.partition("=")
            if key.strip() == name:
                return int(val)
    return _DEFAULT_CAPS[name]


def _check_cap(g: Graph, name: str) -> None:
    if g.n > cap(name):
        raise SizeCap(f"{name} oracle limited to n <= {cap(name)}, got {g.n}")


# --------------------------------------------------------------- alpha


def brute_alpha(g: Graph, method: str = "branch") -> tuple[int, tuple[int, ...]]:
    """Independence number with a maximum independent set."""
    _check_cap(g, "alpha")
    if method == "branch":
        best = _mis_branch(g, (1 << g.n) - 1)
        return best.bit_count(), tuple(bits(best))
    if method == "alt":
        return _mis_via_complement(g)
    raise ValueError(f"unknown method {method!r}")


def _mis_branch(g: Graph, cand: int) -> int:
    if not cand:
        return 0
    # vertices with at most one candidate neighbour can always be taken
    for v in bits(cand):
        if (g.masks[v] & cand).bit_count() <= 1:
            return (1 << v) | _mis_branch(g, cand & ~(1 << v) & ~g.masks[v])
    v = max(bits(cand), key=lambda u: (g.masks[u] & cand).bit_count())
    take = (1 << v) | _mis_branch(g, cand & ~(1 << v) & ~g.masks[v])
    skip = _mis_branch(g, cand & ~(1 << v))
    return take if take.bit_count() >= skip.bit_count() else skip


def _mis_via_complement(g: Graph) -> tuple[int, tuple[int, ...]]:
    # maximum clique of the complement by Bron-Kerbosch with pivoting
    full = (1 << g.n) - 1
    comp = [full & ~g.masks[v] & ~(1 << v) for v in range(g.n)]
    best = 0

    def bk(r: int, p: int, x: int) -> None:
        nonlocal best
        if not p and not x:
            if r.bit_count() > best.bit_count():
                best = r
            return
        if r.bit_count() + p.bit_count() <= best.bit_count():
            return
        pivot = max(bits(p | x), key=lambda u: (comp[u] & p).bit_count())
        for v in bits(p & ~comp[pivot]):
            bk(r | (1 << v), p & comp[v], x & comp[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, full, 0)
    return best.bit_count(), tuple(bits(best))


# ----------------------------------------------------------- Hamiltonian


def _ham_table(g: Graph, start: int) -> list[int]:
    """``table[mask]``: ends of Hamiltonian paths of ``G[mask]`` starting at ``start``."""
    size = 1 << g.n
    table = [0] * size
    table[1 << start] = 1 << start
    for mask in range(size):
        ends = table[mask]
        if not ends:
            continue
        for e in bits(ends):
            for w in bits(g.masks[e] & ~mask):
                table[mask | (1 << w)] |= 1 << w
    return table


def _walk_back(g: Graph, table: list[int], mask: int, end: int) -> list[int]:
    path = [end]
    while mask != 1 << end:
        mask &= ~(1 << end)
        end = bits(table[mask] & g.masks[end])[0]
        path.append(end)
    return path[::-1]


def brute_ham(
    g: Graph, mode: str = "path", endpoints: tuple[int, int] | None = None, method: str = "dp"
) -> tuple[bool, tuple[int, ...] | None]:
    """Hamiltonian path/cycle existence with a witness vertex order."""
    _check_cap(g, "ham")
    if mode not in ("path", "cycle"):
        raise ValueError("mode must be 'path' or 'cycle'")
    if method == "alt":
        return _ham_backtrack(g, mode, endpoints)
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    n = g.n
    if n == 0:
        return False, None
    full = (1 << n) - 1
    if mode == "cycle":
        if n < 3:
            return False, None
        table = _ham_table(g, 0)
        ends = table[full] & g.masks[0]
        if not ends:
            return False, None
        end = bits(ends)[0]
        return True, tuple(_walk_back(g, table, full, end))
    starts = [endpoints[0]] if endpoints else range(n)
    for s in starts:
        if n == 1:
            return (endpoints is None or endpoints[1] == s), (s,)
        table = _ham_table(g, s)
        ends = table[full] & ~(1 << s)
        if endpoints:
            ends &= 1 << endpoints[1]
        if ends:
            return True, tuple(_walk_back(g, table, full, bits(ends)[0]))
    return False, None


def _ham_backtrack(g: Graph, mode: str, endpoints) -> tuple[bool, tuple[int, ...] | None]:
    n = g.n
    if n == 0 or (mode == "cycle" and n < 3):
        return False, None
    if n == 1:
        return mode == "path" and (endpoints is None or endpoints[0] == endpoints[1] == 0), (0,)
    starts = [0] if mode == "cycle" else ([endpoints[0]] if endpoints else range(n))
    for s in starts:
        path = [s]

        def extend(visited: int) -> bool:
            if len(path) == n:
                last = path[-1]
                if mode == "cycle":
                    return g.has_edge(last, s)
                return endpoints is None or last == endpoints[1]
            for w in g.neighbors(path[-1]):
                if not visited >> w & 1:
                    path.append(w)
                    if extend(visited | (1 << w)):
                        return True
                    path.pop()
            return False

        if extend(1 << s):
            return True, tuple(path)
    return False, None


# ------------------------------------------------------------ path cover


def brute_pc(g: Graph, method: str = "dp") -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Path cover number with a minimum cover."""
    _check_cap(g, "pc")
    if g.n == 0:
        return 0, ()
    if method == "dp":
        return _pc_dp(g)
    if method == "alt":
        return _pc_exhaustive(g)
    raise ValueError(f"unknown method {method!r}")


def _pc_dp(g: Graph) -> tuple[int, tuple[tuple[int, ...], ...]]:
    n = g.n
    size = 1 << n
    # reach[mask] has bit start*n+end set iff G[mask] has such a Hamiltonian path
    reach = [0] * size
    for v in range(n):
        reach[1 << v] = 1 << (v * n + v)
    for mask in range(1, size):
        r = reach[mask]
        if not r:
            continue
        for code in bits(r):
            s, e = divmod(code, n)
            for w in bits(g.masks[e] & ~mask):
                reach[mask | (1 << w)] |= 1 << (s * n + w)
    best = [0] * size
    choice = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        best_val = n + 1
        best_sub = 0
        while True:
            part = sub | low
            if reach[part]:
                val = 1 + best[mask ^ part]
                if val < best_val:
                    best_val, best_sub = val, part
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask] = best_val
        choice[mask] = best_sub
    paths = []
    mask = size - 1
    while mask:
        part = choice[mask]
        code = bits(reach[part])[0]
        s, e = divmod(code, n)
        paths.append(_path_in(g, part, s, e))
        mask ^= part
    return best[size - 1], tuple(paths)


def _path_in(g: Graph, part: int, s: int, e: int) -> tuple[int, ...]:
    path = [s]
    target = part.bit_count()

    def extend(visited: int) -> bool:
        if len(path) == target:
            return path[-1] == e
        for w in bits(g.masks[path[-1]] & part & ~visited):
            if w == e and len(path) + 1 < target:
                continue
            path.append(w)
            if extend(visited | (1 << w)):
                return True
            path.pop()
        return False

    if not extend(1 << s):
        raise AssertionError("no Hamiltonian path in a part marked traceable")
    return tuple(path)


def _pc_exhaustive(g: Graph) -> tuple[int, tuple[tuple[int, ...], ...]]:
    @lru_cache(maxsize=None)
    def traceable(part: int) -> tuple[int, ...] | None:
        vs = bits(part)
        for perm in itertools.permutations(vs):
            if perm[0] > perm[-1]:
                continue
            if all(g.has_edge(a, b) for a, b in zip(perm, perm[1:])):
                return perm
        return None

    @lru_cache(maxsize=None)
    def solve(mask: int) -> tuple[tuple[int, ...], ...]:
        if not mask:
            return ()
        low = mask & -mask
        rest = mask ^ low
        best: tuple[tuple[int, ...], ...] | None = None
        for r in range(rest.bit_count() + 1):
            for extra in itertools.combinations(bits(rest), r):
                part = low | to_mask(extra)
                p = traceable(part)
                if p is None:
                    continue
                cand = (p,) + solve(mask ^ part)
                if best is None or len(cand) < len(best):
                    best = cand
        assert best is not None
        return best

    cover = solve((1 << g.n) - 1)
    return len(cover), cover


# ------------------------------------------------------- max embedding


@dataclass(frozen=True)
class EmbeddingOracleResult:
    size: int | None
    witness: TMEmbedding | None

    @property
    def feasible(self) -> bool:
        return self.size is not None


def _automorphisms(h: Graph) -> list[tuple[int, ...]]:
    return [
        p
        for p in itertools.permutations(range(h.n))
        if all(h.has_edge(p[u], p[v]) for u, v in h.edges)
    ]


def _internal_masks(g: Graph) -> dict[tuple[int, int], list[int]]:
    """For each ordered pair ``(a, b)``, the inner vertex sets of simple a-b paths."""
    out: dict[tuple[int, int], set[int]] = {}
    for a in range(g.n):
        table = _ham_table(g, a)
        for mask, ends in enumerate(table):
            if not ends:
                continue
            for b in bits(ends):
                if b != a:
                    out.setdefault((a, b), set()).add(mask & ~(1 << a) & ~(1 << b))
    return {k: sorted(v) for k, v in out.items()}


def brute_max_embedding(h: Graph, g: Graph, lists=None, method: str = "dp") -> EmbeddingOracleResult:
    """Largest list TM-embedding of ``h`` in ``g`` by exhaustive search.

    ``method="dp"`` combines per-pair tables of path interiors;
    ``method="alt"`` routes the pattern edges one by one with plain DFS.
    """
    _check_cap(g, "embed")
    if h.n > 4:
        raise SizeCap("embedding oracle limited to patterns with at most 4 vertices")
    if h.n == 0:
        return EmbeddingOracleResult(0, TMEmbedding.build([], [], []))
    if method == "alt":
        return _embedding_dfs(h, g, lists)
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    full_lists = lists is None
    allowed = [to_mask(range(g.n)) if full_lists else to_mask(lst) for lst in (lists or [None] * h.n)]
    autos = _automorphisms(h) if full_lists else [tuple(range(h.n))]
    inner = _internal_masks(g)
    best_size: int | None = None
    best_choice = None
    for f in itertools.permutations(range(g.n), h.n):
        if any(not allowed[x] >> f[x] & 1 for x in range(h.n)):
            continue
        if any(tuple(f[p[x]] for x in range(h.n)) < f for p in autos):
            continue
        term = to_mask(f)
        states: dict[int, tuple[int, ...]] = {term: ()}
        for x, y in h.edges:
            options = inner.get((f[x], f[y]), [])
            nxt: dict[int, tuple[int, ...]] = {}
            for used, chosen in states.items():
                for opt in options:
                    if opt & used == 0:
                        key = used | opt
                        if key not in nxt:
                            nxt[key] = chosen + (opt,)
            states = nxt
            if not states:
                break
        if not states:
            continue
        used = max(states, key=lambda m: (m.bit_count(), -m))
        size = used.bit_count()
        if best_size is None or size > best_size:
            best_size, best_choice = size, (f, states[used])
            if size == g.n:
                break
    if best_size is None:
        return EmbeddingOracleResult(None, None)
    f, chosen = best_choice
    paths = [
        _path_in(g, opt | (1 << f[x]) | (1 << f[y]), f[x], f[y])
        for (x, y), opt in zip(h.edges, chosen)
    ]
    return EmbeddingOracleResult(best_size, TMEmbedding.from_paths(paths, f))


def _embedding_dfs(h: Graph, g: Graph, lists) -> EmbeddingOracleResult:
    allowed = [set(range(g.n)) if lists is None else set(lst) for lst in (lists or [None] * h.n)]
    best: list = [None, None]

    def route(f: tuple[int, ...], e: int, used: int, paths: list[list[int]]) -> None:
        if e == h.m:
            size = used.bit_count()
            if best[0] is None or size > best[0]:
                best[0], best[1] = size, TMEmbedding.from_paths(paths, f)
            return
        a, b = f[h.edges[e][0]], f[h.edges[e][1]]
        walk = [a]

        def extend(v: int, seen: int) -> None:
            if g.has_edge(v, b):
                paths.append(walk + [b])
                route(f, e + 1, seen, paths)
                paths.pop()
            for w in g.neighbors(v):
                if not (seen >> w & 1):
                    walk.append(w)
                    extend(w, seen | (1 << w))
                    walk.pop()

        extend(a, used)

    for f in itertools.permutations(range(g.n), h.n):
        if all(f[x] in allowed[x] for x in range(h.n)):
            route(f, 0, to_mask(f), [])
    return EmbeddingOracleResult(best[0], best[1])


@dataclass(frozen=True)
class OracleReport:
    alpha: int
    pc: int
    ham_path: bool
    ham_cycle: bool
    alpha_witness: tuple[int, ...]
    pc_witness: tuple[tuple[int, ...], ...]
    ham_path_witness: tuple[int, ...] | None
    ham_cycle_witness: tuple[int, ...] | None


def oracle_report(g: Graph) -> OracleReport:
    a, aw = brute_alpha(g)
    p, pw = brute_pc(g)
    hp, hpw = brute_ham(g, "path")
    hc, hcw = brute_ham(g, "cycle")
    return OracleReport(a, p, hp, hc, aw, pw, hpw, hcw)


__all__ = [
    "EmbeddingOracleResult",
    "OracleReport",
    "brute_alpha",
    "brute_ham",
    "brute_max_embedding",
    "brute_pc",
    "cap",
    "oracle_report",
]
