"""TM-embeddings: data model, validation and certificate JSON."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

from .errors import DegreeError, StructureError
from .graph import Edge, Graph, dissolve

Lists = Sequence[Sequence[int] | frozenset[int] | set[int]]


@dataclass(frozen=True)
class TMEmbedding:
    """Subgraph ``M`` of the host plus the terminal map ``f`` (``f[h]`` is the image of ``h``)."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    terminal_map: tuple[int, ...]

    @classmethod
    def build(cls, vertices, edges, terminal_map) -> TMEmbedding:
        es = {(u, v) if u < v else (v, u) for u, v in edges}
        return cls(tuple(sorted(set(vertices))), tuple(sorted(es)), tuple(terminal_map))

    @classmethod
    def from_paths(cls, paths: Sequence[Sequence[int]], terminal_map, extra=()) -> TMEmbedding:
        vs = set(extra) | set(terminal_map)
        es = []
        for p in paths:
            vs.update(p)
            es.extend(zip(p, p[1:]))
        return cls.build(vs, es, terminal_map)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict[str, Any]:
        return {
            "model_vertices": list(self.vertices),
            "model_edges": [list(e) for e in self.edges],
            "terminal_map": {str(h): g for h, g in enumerate(self.terminal_map)},
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> TMEmbedding:
        tmap = data["terminal_map"]
        if isinstance(tmap, Mapping):
            keys = sorted(int(h) for h in tmap)
            if keys != list(range(len(keys))):
                raise ValueError("terminal_map keys must be 0..|V(H)|-1")
            images = [int(tmap[str(h)]) if str(h) in tmap else int(tmap[h]) for h in keys]
        else:
            images = [int(g) for g in tmap]
        return cls.build(
            [int(v) for v in data["model_vertices"]],
            [(int(u), int(v)) for u, v in data["model_edges"]],
            images,
        )

    def remap(self, idmap: Sequence[int]) -> TMEmbedding:
        """Translate every vertex through ``idmap`` (local id -> host id)."""
        return TMEmbedding.build(
            [idmap[v] for v in self.vertices],
            [(idmap[u], idmap[v]) for u, v in self.edges],
            [idmap[v] for v in self.terminal_map],
        )


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_tm_embedding(
    h_graph: Graph,
    g: Graph,
    emb: TMEmbedding,
    lists: Lists | None = None,
) -> Validation:
    """Check that ``emb`` is a (list) TM-embedding of ``h_graph`` in ``g``.

    The ``reason`` of a failure is one of ``vertex``, ``subgraph``,
    ``terminal``, ``injective``, ``list``, ``degree``, ``structure`` or
    ``isomorphism``.
    """
    vs = emb.vertices
    if any(not (0 <= v < g.n) for v in vs):
        return Validation(False, "vertex", "model vertex outside host graph")
    vset = set(vs)
    for u, v in emb.edges:
        if u not in vset or v not in vset:
            return Validation(False, "subgraph", f"edge ({u}, {v}) leaves the model vertex set")
        if not g.has_edge(u, v):
            return Validation(False, "subgraph", f"edge ({u}, {v}) not in host graph")
    f = emb.terminal_map
    if len(f) != h_graph.n:
        return Validation(False, "terminal", "terminal map must cover every pattern vertex")
    if any(x not in vset for x in f):
        return Validation(False, "terminal", "terminal image outside the model")
    if len(set(f)) != len(f):
        return Validation(False, "injective", "terminal map is not injective")
    if lists is not None:
        for hv, x in enumerate(f):
            if x not in set(lists[hv]):
                return Validation(False, "list", f"image {x} of {hv} violates its list")
    local = {v: i for i, v in enumerate(vs)}
    m_graph = Graph.from_edges(len(vs), [(local[u], local[v]) for u, v in emb.edges])
    try:
        dissolved, _ = dissolve(m_graph, [local[x] for x in f])
    except DegreeError as exc:
        return Validation(False, "degree", str(exc))
    except StructureError as exc:
        return Validation(False, "structure", str(exc))
    if dissolved.edges != h_graph.edges:
        return Validation(False, "isomorphism", "dissolved model differs from the pattern")
    return Validation(True)


@dataclass(frozen=True)
class EmbedOutcome:
    tag: Literal["embedding", "independent_set", "infeasible"]
    embedding: TMEmbedding | None = None
    independent_set: tuple[int, ...] | None = None
    stats: dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def of_embedding(cls, emb: TMEmbedding, **stats: Any) -> EmbedOutcome:
        return cls("embedding", embedding=emb, stats=dict(stats))

    @classmethod
    def of_independent_set(cls, members, **stats: Any) -> EmbedOutcome:
        return cls("independent_set", independent_set=tuple(sorted(members)), stats=dict(stats))

    @classmethod
    def infeasible(cls, **stats: Any) -> EmbedOutcome:
        return cls("infeasible", stats=dict(stats))

    def to_json(self) -> dict[str, Any]:
        if self.tag == "embedding":
            assert self.embedding is not None
            return self.embedding.to_json()
        if self.tag == "independent_set":
            return {"independent_set": list(self.independent_set or ())}
        return {"infeasible": True}
