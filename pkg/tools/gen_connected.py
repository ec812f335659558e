"""Regenerate tests/data/connected_n*.g6: all connected graphs up to isomorphism.

Small orders come from the networkx graph atlas; order 8 is built by adding a
vertex to every connected 7-vertex graph and removing isomorphic duplicates.
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"


def atlas_connected(n: int) -> list[nx.Graph]:
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


def extend(graphs: list[nx.Graph], n: int) -> list[nx.Graph]:
    buckets: dict[str, list[nx.Graph]] = {}
    out = []
    for base in graphs:
        for r in range(1, n):
            for nbrs in itertools.combinations(range(n - 1), r):
                g = base.copy()
                g.add_edges_from((n - 1, v) for v in nbrs)
                key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(g, other) for other in bucket):
                    continue
                bucket.append(g)
                out.append(g)
    return out


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    prev = None
    for n in range(1, 9):
        graphs = atlas_connected(n) if n <= 7 else extend(prev, n)
        prev = graphs
        lines = [nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs]
        (OUT / f"connected_n{n}.g6").write_text("\n".join(sorted(lines)) + "\n")
        print(n, len(lines), file=sys.stderr)


if __name__ == "__main__":
    main()
