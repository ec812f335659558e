"""Command-line front end.

Every subcommand prints a JSON certificate (stdout or ``--out``) and a short
summary on stderr.  Exit codes: 0 feasible/minimum, 1 infeasible or an
independent-set certificate, 2 input error, 3 guardrail abort.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from .embedding import EmbedOutcome, TMEmbedding, validate_tm_embedding
from .errors import GuardrailAbort, ParseError, PreconditionError, SizeCap
from .generators import clique_union
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    is_independent_set,
    parse_graph,
    serialize_graph,
)
from .linkage import validate_linkage
from .merging import max_list_tm_embedding
from .oracles import brute_alpha, brute_ham, brute_max_embedding, brute_pc, cap
from .pathcover import BelowGMOutcome, below_gm, check_outcome, cover_at_most, validate_cover

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_ABORT = 0, 1, 2, 3

Result = tuple[int, dict[str, Any]]


# ------------------------------------------------------------ helpers


def _solve(
    g: Graph,
    h: Graph,
    lists,
    k: int,
    escalate: bool,
    max_descriptors: int | None,
) -> tuple[EmbedOutcome, int]:
    """Run the embedding solver, raising ``k`` after each IS when escalating.

    An IS of size ``k`` shows ``alpha >= k``; once ``k`` exceeds ``alpha`` the
    solver has to answer with a model or with infeasibility.
    """
    if k < 1:
        raise PreconditionError("k must be positive")
    while True:
        out = max_list_tm_embedding(g, h, lists, k, max_descriptors=max_descriptors)
        if out.tag != "independent_set" or not escalate:
            return out, k
        k += 1


def _walk(edges: Sequence[tuple[int, int]], start: int) -> list[int]:
    nbrs: dict[int, list[int]] = {}
    for u, v in edges:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    walk, prev = [start], None
    while True:
        nxt = [w for w in nbrs.get(walk[-1], []) if w != prev and w != start]
        if not nxt:
            return walk
        prev = walk[-1]
        walk.append(min(nxt))


def _is_payload(base: dict[str, Any], out: EmbedOutcome, k: int) -> Result:
    ind = list(out.independent_set or ())
    return EXIT_NO, {**base, "answer": "independent_set", "independent_set": ind, "k": k}


def _pattern_json(h: Graph) -> dict[str, Any]:
    return {"n": h.n, "edges": [list(e) for e in h.edges]}


def is_hamiltonian_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    n = g.n
    return (
        n >= 3
        and sorted(cycle) == list(range(n))
        and all(g.has_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n))
    )


def _is_cycle_through(g: Graph, cycle: Sequence[int], terms: Sequence[int]) -> bool:
    c = len(cycle)
    return (
        c >= 3
        and len(set(cycle)) == c
        and all(0 <= v < g.n for v in cycle)
        and all(g.has_edge(cycle[i], cycle[(i + 1) % c]) for i in range(c))
        and set(terms) <= set(cycle)
    )


# ----------------------------------------------------------- commands


def cmd_hampath(
    g: Graph,
    k: int = 3,
    endpoints: tuple[int, int] | None = None,
    *,
    escalate: bool = True,
    max_descriptors: int | None = None,
) -> Result:
    base: dict[str, Any] = {"problem": "hampath"}
    if endpoints is not None:
        g.check_vertices(endpoints)
        base["endpoints"] = list(endpoints)
    if g.n <= 1:
        ok = g.n == 1 and (endpoints is None or endpoints[0] == endpoints[1] == 0)
        return (EXIT_OK, {**base, "answer": "yes", "path": [0]}) if ok else (EXIT_NO, {**base, "answer": "no"})
    if endpoints is not None and endpoints[0] == endpoints[1]:
        return EXIT_NO, {**base, "answer": "no"}
    lists = None if endpoints is None else [[endpoints[0]], [endpoints[1]]]
    out, k = _solve(g, complete_graph(2), lists, k, escalate, max_descriptors)
    if out.tag == "independent_set":
        return _is_payload(base, out, k)
    if out.tag == "embedding" and out.embedding is not None and out.embedding.size == g.n:
        emb = out.embedding
        path = _walk(emb.edges, emb.terminal_map[0])
        return EXIT_OK, {**base, "answer": "yes", "path": path, "k": k}
    return EXIT_NO, {**base, "answer": "no", "k": k}


def cmd_hamcycle(
    g: Graph, k: int = 3, *, escalate: bool = True, max_descriptors: int | None = None
) -> Result:
    if g.n < 3:
        return EXIT_NO, {"problem": "hamcycle", "answer": "no"}
    out, k = _solve(g, cycle_graph(3), None, k, escalate, max_descriptors)
    if out.tag == "independent_set":
        return _is_payload({"problem": "hamcycle"}, out, k)
    if out.tag == "embedding" and out.embedding is not None and out.embedding.size == g.n:
        cycle = _walk(out.embedding.edges, min(out.embedding.vertices))
        return EXIT_OK, {"problem": "hamcycle", "answer": "yes", "cycle": cycle, "k": k}
    return EXIT_NO, {"problem": "hamcycle", "answer": "no", "k": k}


def cmd_pathcover(
    g: Graph, p: int, k: int = 3, *, escalate: bool = True, max_descriptors: int | None = None
) -> Result:
    base = {"problem": "pathcover", "p": p}
    while True:
        answer, data = cover_at_most(g, p, k, max_descriptors=max_descriptors)
        if answer != "independent_set" or not escalate:
            break
        k += 1
    if answer == "yes":
        return EXIT_OK, {**base, "answer": "yes", "paths": [list(q) for q in data], "k": k}
    if answer == "independent_set":
        return EXIT_NO, {**base, "answer": "independent_set", "independent_set": list(data), "k": k}
    return EXIT_NO, {**base, "answer": "no", "k": k}


def cmd_below_gm(g: Graph, k: int, *, max_descriptors: int | None = None) -> Result:
    out = below_gm(g, k, max_descriptors=max_descriptors)
    payload = {"problem": "below-gm", "k": k, **out.to_json()}
    return (EXIT_OK if out.minimum else EXIT_NO), payload


def cmd_linkage(
    g: Graph,
    k: int,
    pairs: Sequence[tuple[int, int]],
    *,
    escalate: bool = True,
    max_descriptors: int | None = None,
) -> Result:
    pairs = [tuple(p) for p in pairs]
    flat = [v for p in pairs for v in p]
    g.check_vertices(flat)
    if not pairs or len(set(flat)) != len(flat):
        raise PreconditionError("pairs must be non-empty and use distinct vertices")
    base = {"problem": "linkage", "pairs": [list(p) for p in pairs]}
    h = disjoint_union(*[complete_graph(2)] * len(pairs))
    lists = [[v] for v in flat]
    out, k = _solve(g, h, lists, k, escalate, max_descriptors)
    if out.tag == "independent_set":
        return _is_payload(base, out, k)
    if out.tag == "embedding" and out.embedding is not None and out.embedding.size == g.n:
        paths = [_walk(out.embedding.edges, s) for s, _ in pairs]
        return EXIT_OK, {**base, "answer": "yes", "paths": paths, "k": k}
    return EXIT_NO, {**base, "answer": "no", "k": k}


def _tcycle_one(args) -> tuple[EmbedOutcome, int]:
    g, h, lists, k, escalate, max_descriptors = args
    return _solve(g, h, lists, k, escalate, max_descriptors)


def tcycle_orderings(terms: Sequence[int]) -> list[tuple[int, ...]]:
    """Cyclic orders of ``terms`` up to rotation and reflection."""
    first, rest = terms[0], list(terms[1:])
    out = []
    for perm in itertools.permutations(rest):
        if len(perm) >= 2 and perm[0] > perm[-1]:
            continue
        out.append((first, *perm))
    return out


def cmd_tcycle(
    g: Graph,
    k: int,
    terminals: Sequence[int],
    *,
    escalate: bool = True,
    max_descriptors: int | None = None,
    jobs: int = 1,
    dedup: bool = True,
) -> Result:
    terms = list(dict.fromkeys(g.check_vertices(terminals)))
    if not terms:
        raise PreconditionError("at least one terminal is required")
    base = {"problem": "tcycle", "terminals": terms}
    if len(terms) <= 2:
        # a triangle pattern with the terminals pinned: longest cycle through them
        lists = [[t] for t in terms] + [list(range(g.n))] * (3 - len(terms))
        tasks = [(g, cycle_graph(3), lists, k, escalate, max_descriptors)]
    else:
        orders = tcycle_orderings(terms) if dedup else [tuple(p) for p in itertools.permutations(terms)]
        h = cycle_graph(len(terms))
        tasks = [(g, h, [[t] for t in order], k, escalate, max_descriptors) for order in orders]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_tcycle_one, tasks))
    else:
        results = [_tcycle_one(t) for t in tasks]
    best: TMEmbedding | None = None
    k_used = k
    for out, k_run in results:
        k_used = max(k_used, k_run)
        if out.tag == "independent_set":
            return _is_payload(base, out, k_run)
        if out.tag == "embedding" and out.embedding is not None:
            if best is None or out.embedding.size > best.size:
                best = out.embedding
    if best is None:
        return EXIT_NO, {**base, "answer": "no", "k": k_used}
    cycle = _walk(best.edges, terms[0])
    return EXIT_OK, {**base, "answer": "yes", "cycle": cycle, "size": len(cycle), "k": k_used}


def cmd_embed(
    g: Graph,
    h: Graph,
    k: int,
    lists=None,
    *,
    escalate: bool = True,
    max_descriptors: int | None = None,
) -> Result:
    out, k = _solve(g, h, lists, k, escalate, max_descriptors)
    base = {"problem": "embed", "pattern": _pattern_json(h), "lists": lists, "k": k}
    if out.tag == "embedding":
        return EXIT_OK, {**base, "answer": "embedding", **out.to_json()}
    if out.tag == "independent_set":
        return EXIT_NO, {**base, "answer": "independent_set", **out.to_json()}
    return EXIT_NO, {**base, "answer": "infeasible"}


def cmd_gen(sizes: Sequence[int], cross_p: float, seed: int) -> tuple[Graph, int | None]:
    g = clique_union(sizes, cross_p, seed)
    alpha = brute_alpha(g)[0] if g.n <= cap("alpha") else None
    return g, alpha


# ------------------------------------------------------------- verify


def cmd_verify(cert: dict[str, Any], g: Graph, problem: str | None = None) -> tuple[int, str]:
    """Re-check a certificate; returns ``(exit code, message)``."""
    problem = problem or cert.get("problem")
    try:
        ok, msg = _verify(cert, g, problem)
    except (KeyError, TypeError, ValueError) as exc:
        return EXIT_NO, f"malformed certificate: {exc}"
    except SizeCap as exc:
        return EXIT_NO, f"cannot verify: {exc}"
    return (EXIT_OK if ok else EXIT_NO), msg


def _check_is(g: Graph, ind: Sequence[int], size: int) -> tuple[bool, str]:
    if len(set(ind)) != len(ind) or any(not (0 <= v < g.n) for v in ind):
        return False, "independent set has invalid vertices"
    if not is_independent_set(g, ind):
        return False, "set is not independent"
    if len(ind) != size:
        return False, f"independent set has size {len(ind)}, expected {size}"
    return True, f"independent set of size {size} is valid"


def _verify(cert: dict[str, Any], g: Graph, problem: str | None) -> tuple[bool, str]:
    if problem == "below-gm":
        out = BelowGMOutcome.from_json(cert)
        k = int(cert["k"])
        if not check_outcome(g, k, out):
            return False, "cover or independent set fails the contract"
        if out.minimum and g.n <= cap("pc") and brute_pc(g)[0] != len(out.cover):
            return False, "cover is not minimum"
        return True, "below-gm certificate is valid"
    answer = cert["answer"]
    if answer == "independent_set":
        return _check_is(g, cert["independent_set"], int(cert["k"]))
    if problem == "hampath":
        ends = cert.get("endpoints")
        if answer == "yes":
            path = cert["path"]
            ok = validate_cover(g, [path]) and (ends is None or [path[0], path[-1]] in (ends, ends[::-1]))
            return ok, "Hamiltonian path" if ok else "not a Hamiltonian path"
        found, _ = brute_ham(g, "path", tuple(ends) if ends else None)
        return not found, "no Hamiltonian path (oracle)" if not found else "oracle finds a path"
    if problem == "hamcycle":
        if answer == "yes":
            ok = is_hamiltonian_cycle(g, cert["cycle"])
            return ok, "Hamiltonian cycle" if ok else "not a Hamiltonian cycle"
        found, _ = brute_ham(g, "cycle")
        return not found, "no Hamiltonian cycle (oracle)" if not found else "oracle finds a cycle"
    if problem == "pathcover":
        p = int(cert["p"])
        if answer == "yes":
            ok = validate_cover(g, cert["paths"]) and len(cert["paths"]) <= p
            return ok, "cover is valid" if ok else "invalid cover"
        ok = brute_pc(g)[0] > p
        return ok, "no small cover (oracle)" if ok else "oracle finds a small cover"
    if problem == "linkage":
        pairs = [tuple(p) for p in cert["pairs"]]
        if answer == "yes":
            ok = validate_linkage(g, pairs, cert["paths"], spanning=True)
            return ok, "Hamiltonian linkage" if ok else "invalid linkage"
        h = disjoint_union(*[complete_graph(2)] * len(pairs))
        res = brute_max_embedding(h, g, [[v] for p in pairs for v in p])
        ok = res.size != g.n
        return ok, "no Hamiltonian linkage (oracle)" if ok else "oracle finds a linkage"
    if problem == "tcycle":
        if answer == "yes":
            cyc = cert["cycle"]
            ok = _is_cycle_through(g, cyc, cert["terminals"]) and len(cyc) == cert["size"]
            return ok, "cycle through terminals" if ok else "invalid cycle"
        return False, "infeasibility of a T-cycle is not checkable here"
    if problem == "embed":
        pat = cert["pattern"]
        h = Graph.from_edges(pat["n"], pat["edges"])
        lists = cert.get("lists")
        if answer == "embedding":
            v = validate_tm_embedding(h, g, TMEmbedding.from_json(cert), lists)
            return v.ok, "embedding is valid" if v.ok else f"invalid embedding: {v.reason}"
        res = brute_max_embedding(h, g, lists)
        return not res.feasible, "infeasible (oracle)" if not res.feasible else "oracle finds a model"
    raise ValueError(f"unknown problem {problem!r}")


# -------------------------------------------------------------- parsing


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        a, sep, b = item.partition(":")
        if not sep:
            raise ParseError(f"pair {item!r} must look like s:t")
        out.append((int(a), int(b)))
    return out


def _parse_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _load_graph(path: str, fmt: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), fmt)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alphaham", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, k_required: bool = False) -> None:
        p.add_argument("--graph", required=True, help="input graph file")
        p.add_argument("--format", default="edge-list", choices=["edge-list", "dimacs", "json"])
        p.add_argument("--k", type=int, required=k_required, default=None if k_required else 3)
        p.add_argument("--out", help="write the JSON certificate here instead of stdout")
        p.add_argument("--max-descriptors", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument(
            "--no-escalate",
            action="store_true",
            help="stop at the first independent set instead of retrying with k+1",
        )

    p = sub.add_parser("hampath", help="Hamiltonian path (pattern K2)")
    common(p)
    p.add_argument("--terminals", help="pin the two endpoints, e.g. '0,5'")
    p = sub.add_parser("hamcycle", help="Hamiltonian cycle (pattern C3)")
    common(p)
    p = sub.add_parser("pathcover", help="cover by at most p paths")
    common(p)
    p.add_argument("--p", type=int, required=True)
    p = sub.add_parser("below-gm", help="minimum path cover or an IS of size |cover|+k")
    common(p, k_required=True)
    p = sub.add_parser("linkage", help="Hamiltonian linkage of terminal pairs")
    common(p)
    p.add_argument("--pairs", required=True, help="'s1:t1,s2:t2'")
    p = sub.add_parser(
        "tcycle",
        help="longest cycle through all terminals",
        description="Longest cycle through all terminals.  With one or two "
        "terminals the pattern is a triangle whose other vertices may map anywhere.",
    )
    common(p)
    p.add_argument("--terminals", required=True, help="'a,b,c'")
    p = sub.add_parser("embed", help="maximum list TM-embedding of a pattern graph")
    common(p)
    p.add_argument("--pattern", required=True, help="pattern graph file (same format)")
    p.add_argument("--lists", help="JSON list of vertex lists, one per pattern vertex")
    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", default="edge-list", choices=["edge-list", "dimacs", "json"])
    p.add_argument("--certificate", required=True)
    p.add_argument("--problem", help="override the problem named in the certificate")
    p = sub.add_parser("gen", help="union of cliques with random cross edges")
    p.add_argument("--cliques", required=True, help="clique sizes, e.g. '5,5,4'")
    p.add_argument("--cross-p", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="edge-list", choices=["edge-list", "dimacs", "json"])
    p.add_argument("--out")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except GuardrailAbort as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except (ParseError, PreconditionError, OSError, ValueError, IndexError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _run(args: argparse.Namespace) -> int:
    if args.command == "gen":
        g, alpha = cmd_gen(_parse_ints(args.cliques), args.cross_p, args.seed)
        _emit(serialize_graph(g, args.format), args.out)
        note = f"alpha = {alpha}" if alpha is not None else "alpha not computed (above oracle cap)"
        print(f"generated n={g.n} m={g.m}; {note}", file=sys.stderr)
        return EXIT_OK
    g = _load_graph(args.graph, args.format)
    if args.command == "verify":
        with open(args.certificate, encoding="utf-8") as fh:
            cert = json.load(fh)
        code, msg = cmd_verify(cert, g, args.problem)
        print(("valid: " if code == EXIT_OK else "invalid: ") + msg, file=sys.stderr)
        return code
    opts = {"escalate": not args.no_escalate, "max_descriptors": args.max_descriptors}
    if args.command == "hampath":
        ends = None
        if args.terminals:
            ts = _parse_ints(args.terminals)
            if len(ts) != 2:
                raise PreconditionError("--terminals takes exactly two endpoints")
            ends = (ts[0], ts[1])
        code, payload = cmd_hampath(g, args.k, ends, **opts)
    elif args.command == "hamcycle":
        code, payload = cmd_hamcycle(g, args.k, **opts)
    elif args.command == "pathcover":
        code, payload = cmd_pathcover(g, args.p, args.k, **opts)
    elif args.command == "below-gm":
        code, payload = cmd_below_gm(g, args.k, max_descriptors=args.max_descriptors)
    elif args.command == "linkage":
        code, payload = cmd_linkage(g, args.k, _parse_pairs(args.pairs), **opts)
    elif args.command == "tcycle":
        code, payload = cmd_tcycle(g, args.k, _parse_ints(args.terminals), jobs=args.jobs, **opts)
    elif args.command == "embed":
        h = _load_graph(args.pattern, args.format)
        lists = json.loads(args.lists) if args.lists else None
        code, payload = cmd_embed(g, h, args.k, lists, **opts)
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(args.command)
    _emit(json.dumps(payload) + "\n", args.out)
    print(f"{payload['problem']}: {payload.get('answer', payload.get('certificate'))}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
