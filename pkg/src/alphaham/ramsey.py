"""Constructive clique-or-independent-set extraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

from .errors import PreconditionError
from .graph import Graph, is_clique, is_independent_set

MAX_PARAM_SUM = 64


@lru_cache(maxsize=None)
def binom(n: int, k: int) -> int:
    """Binomial coefficient via Pascal's rule (desk-scale arguments only)."""
    if k < 0 or n < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    if n > MAX_PARAM_SUM:
        raise PreconditionError(f"binomial table limited to n <= {MAX_PARAM_SUM}")
    return binom(n - 1, k - 1) + binom(n - 1, k)


def ramsey_bound(r: int, s: int) -> int:
    """Vertex count that guarantees an r-independent set or an s-clique."""
    return binom(r + s - 2, r - 1)


@dataclass(frozen=True)
class CliqueOrIS:
    tag: Literal["clique", "independent"]
    members: tuple[int, ...]
    operations: int = field(default=0, compare=False)


def ramsey_extract(g: Graph, r: int, s: int) -> CliqueOrIS:
    """Return an independent set of size ``r`` or a clique of size ``s``.

    Recurses on the neighbourhood of the lowest remaining vertex when it is
    large enough, otherwise on its non-neighbourhood.
    """
    if r < 1 or s < 1:
        raise PreconditionError("r and s must be positive")
    if r + s > MAX_PARAM_SUM:
        raise PreconditionError(f"r + s must not exceed {MAX_PARAM_SUM}")
    if g.n < ramsey_bound(r, s):
        raise PreconditionError(
            f"need at least {ramsey_bound(r, s)} vertices for r={r}, s={s}, got {g.n}"
        )
    r0, s0 = r, s
    pool = (1 << g.n) - 1
    clique: list[int] = []
    indep: list[int] = []
    ops = 0
    while True:
        v = (pool & -pool).bit_length() - 1
        if r == 1:
            out = CliqueOrIS("independent", tuple(sorted(indep + [v])), ops)
            break
        if s == 1:
            out = CliqueOrIS("clique", tuple(sorted(clique + [v])), ops)
            break
        rest = pool & ~(1 << v)
        a = rest & g.masks[v]
        ops += g.n
        if a.bit_count() >= ramsey_bound(r, s - 1):
            clique.append(v)
            pool, s = a, s - 1
        else:
            indep.append(v)
            pool, r = rest & ~g.masks[v], r - 1
    _check(g, out, r0, s0)
    return out


def _check(g: Graph, out: CliqueOrIS, r: int, s: int) -> None:
    members = list(out.members)
    if out.tag == "independent":
        ok = is_independent_set(g, members)
    else:
        ok = is_clique(g, members)
    if not ok or len(members) != (r if out.tag == "independent" else s):
        raise AssertionError(f"ramsey recursion produced an invalid {out.tag}")


__all__ = ["CliqueOrIS", "binom", "ramsey_bound", "ramsey_extract"]
