"""Command-line interface.

Subcommands: build, graph, srg, cliques, onan, classify-linspace,
reconstruct, isomorphic. All outputs are deterministic: identical inputs
produce byte-identical files.

Exit codes: 0 on success, 1 when a checked verification property fails
(wrong parameters, configurations found against --expect-none, failed
reconstruction or isomorphism), 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import cliques as cliques_mod
from . import confluence as confl
from . import incidence as inc
from . import linspace as lsp
from . import reconstruct as rec
from .errors import (
    AssumptionViolation,
    ConstructionFailed,
    GeometryError,
    InternalCheckFailed,
    LemmaViolation,
    NoEmbeddingFound,
    NotAUnitalGraph,
)

# errors meaning "the theorem-level check failed on valid input"
_VERIFICATION_ERRORS = (
    AssumptionViolation,
    ConstructionFailed,
    InternalCheckFailed,
    LemmaViolation,
    NoEmbeddingFound,
    NotAUnitalGraph,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unitals",
        description="Construct unitals and related geometries, build their "
                    "confluence graphs, and verify their clique structure.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a structure, write incidence-v1 JSON")
    p.add_argument("target", choices=["hermitian", "pg", "ag", "puncture"])
    p.add_argument("--q", type=int, required=True, help="order parameter q")
    p.add_argument("--delete", metavar="SPEC",
                   help="puncture only: line | line-swap | conic | comma-separated point indices")
    p.add_argument("--in", dest="input", metavar="FILE",
                   help="puncture only: structure to puncture (default: pg of order q)")
    p.add_argument("-o", "--output", metavar="FILE", help="output path (default: stdout)")

    p = sub.add_parser("graph", help="confluence graph of a structure, as DIMACS")
    p.add_argument("input", metavar="FILE")
    p.add_argument("-o", "--output", metavar="FILE")

    p = sub.add_parser("srg", help="strong-regularity parameters of the confluence graph")
    p.add_argument("input", metavar="FILE")
    p.add_argument("--expect-unital", type=int, metavar="Q",
                   help="fail unless parameters match a unital of order Q")

    p = sub.add_parser("cliques", help="maximal cliques of the confluence graph")
    p.add_argument("input", metavar="FILE")
    p.add_argument("--classify", action="store_true",
                   help="tag cliques; on a unital, verify the pencil/near-pencil census")
    p.add_argument("--max-only", action="store_true", help="print only the maximum size")
    p.add_argument("--json", metavar="PATH", help="write the full clique report as JSON")

    p = sub.add_parser("onan", help="search 4-line/6-point configurations")
    p.add_argument("input", metavar="FILE")
    p.add_argument("--limit", type=int, default=0, help="stop after N hits (0 = exhaustive)")
    p.add_argument("--expect-none", action="store_true",
                   help="exit 1 if any configuration is found")

    p = sub.add_parser("classify-linspace", help="three-way linear-space classification")
    p.add_argument("input", metavar="FILE")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--embed", action="store_true", help="also compute the embedding witness")
    p.add_argument("--json", metavar="PATH")

    p = sub.add_parser("reconstruct", help="rebuild a unital from a DIMACS confluence graph")
    p.add_argument("input", metavar="GRAPH.dimacs")
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--verify", metavar="STRUCT.json",
                   help="check the rebuilt unital is isomorphic to this structure")

    p = sub.add_parser("isomorphic", help="search a point bijection between two structures")
    p.add_argument("a", metavar="A.json")
    p.add_argument("b", metavar="B.json")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _structure_json(S: inc.IncidenceStructure) -> str:
    return json.dumps(inc.to_json_dict(S), indent=1) + "\n"


def _deletion_set(plane: inc.IncidenceStructure, spec: str, q: int) -> set[int]:
    if spec == "line":
        return set(plane.blocks[0])
    if spec == "line-swap":
        w = plane.blocks[0]
        u = w[0]
        v = next(p for p in range(plane.num_points) if p not in w)
        return (set(w) - {u}) | {v}
    if spec == "conic":
        canonical = inc.projective_plane(q)
        if plane != canonical:
            raise ValueError("--delete conic requires the canonical pg plane of order q")
        return set(inc.conic_points(q))
    try:
        points = {int(tok) for tok in spec.split(",")}
    except ValueError:
        raise ValueError(f"bad --delete spec {spec!r}") from None
    return points


def cmd_build(args) -> int:
    if args.target == "hermitian":
        out = inc.hermitian_unital(args.q)
    elif args.target == "pg":
        out = inc.projective_plane(args.q)
    elif args.target == "ag":
        out = inc.affine_plane(args.q)
    else:
        if args.delete is None:
            raise ValueError("puncture requires --delete")
        plane = inc.read_json(args.input) if args.input else inc.projective_plane(args.q)
        out = inc.puncture(plane, _deletion_set(plane, args.delete, args.q))
    _emit(_structure_json(out), args.output)
    return 0


def cmd_graph(args) -> int:
    S = inc.read_json(args.input)
    G = confl.build_confluence(S)
    lines = ["c confluence graph: vertices are blocks, edges join blocks sharing a point"]
    edges = G.edges()
    lines.append(f"p edge {G.n} {len(edges)}")
    lines.extend(f"e {i + 1} {j + 1}" for i, j in edges)
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_srg(args) -> int:
    S = inc.read_json(args.input)
    G = confl.build_confluence(S)
    params = confl.srg_check(G)
    if params is None:
        print(f"vertices={G.n} not strongly regular")
        return 1 if args.expect_unital is not None else 0
    bound = confl.hoffman_bound(params)
    print(f"v={params.v} k={params.k} lambda={params.lam} mu={params.mu} "
          f"r={params.r} s={params.s} hoffman_bound={bound}")
    if args.expect_unital is not None:
        expected = confl.expected_unital_params(args.expect_unital)
        if params != expected:
            print(f"MISMATCH: expected {expected} for a unital of order {args.expect_unital}")
            return 1
        print(f"matches the confluence graph of a unital of order {args.expect_unital}")
    return 0


def cmd_cliques(args) -> int:
    S = inc.read_json(args.input)
    G = confl.build_confluence(S)
    if args.max_only:
        print(f"max_clique_size={cliques_mod.max_clique_size(G)}")
        return 0
    found = cliques_mod.enumerate_maximal_cliques(G)
    sizes = Counter(len(c) for c in found)
    print(f"maximal_cliques={len(found)}")
    print("sizes=" + " ".join(f"{s}:{c}" for s, c in sorted(sizes.items())))
    status = 0
    records = []
    if args.classify:
        tagged = [cliques_mod.classify_clique(S, c) for c in found]
        tags = Counter(t.tag for t in tagged)
        print("tags=" + " ".join(f"{t}:{c}" for t, c in sorted(tags.items())))
        q = inc.validate_unital(S)
        if q is not None:
            bad = [t for t in tagged
                   if not (t.tag == "pencil" and t.size == q * q
                           or t.tag == "near_pencil" and t.size == q + 2)]
            if bad:
                print(f"VIOLATION: {len(bad)} cliques are neither pencils of size "
                      f"{q * q} nor near pencils of size {q + 2}")
                status = 1
            else:
                print(f"verified: every maximal clique is a pencil (size {q * q}) "
                      f"or a near pencil (size {q + 2})")
        records = [{k: v for k, v in (("blocks", list(t.clique)), ("size", t.size),
                                      ("tag", t.tag), ("point", t.point), ("line", t.line))
                    if v is not None} for t in tagged]
    else:
        records = [{"blocks": list(c), "size": len(c)} for c in found]
    if args.json:
        records.sort(key=lambda r: (-r["size"], r["blocks"]))
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(records, fh, indent=1)
            fh.write("\n")
    return status


def cmd_onan(args) -> int:
    S = inc.read_json(args.input)
    configs = inc.find_onan(S, limit=args.limit)
    print(f"onan_configurations={len(configs)}")
    for cfg in configs[:20]:
        print(f"blocks={','.join(map(str, cfg.blocks))} "
              f"points={','.join(map(str, cfg.points))}")
    if len(configs) > 20:
        print(f"... {len(configs) - 20} more")
    if args.expect_none and configs:
        return 1
    return 0


def cmd_classify_linspace(args) -> int:
    S = inc.read_json(args.input)
    result = lsp.classify(S, args.q, embed=args.embed)
    print(f"case={result.case} q={result.q} line_count={result.line_count} "
          f"projective_lines={len(result.projective_lines)}")
    if result.case == "thin_point":
        print(f"thin_point={result.thin_point} thin_line={result.thin_line}")
    payload: dict = {
        "case": result.case,
        "q": result.q,
        "line_count": result.line_count,
        "projective_lines": list(result.projective_lines),
        "thin_point": result.thin_point,
        "thin_line": result.thin_line,
    }
    if result.embedding is not None:
        w = result.embedding
        print(f"embedding: host_points={w.host.num_points} deleted={list(w.deleted)}")
        payload["embedding"] = {
            "host": inc.to_json_dict(w.host),
            "point_map": list(w.point_map),
            "deleted": list(w.deleted),
        }
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    return 0


def cmd_reconstruct(args) -> int:
    G = confl.read_dimacs(args.input)
    result = rec.reconstruct_unital(G)
    _emit(_structure_json(result.structure), args.output)
    if args.output is not None:
        note = " (order-2 shortcut)" if result.via_q2_shortcut else ""
        print(f"reconstructed unital of order {result.q}: "
              f"{result.structure.num_points} points, "
              f"{len(result.structure.blocks)} blocks{note}")
    if args.verify:
        target = inc.read_json(args.verify)
        witness = rec.isomorphic(result.structure, target)
        if witness is None:
            print("verification FAILED: rebuilt structure is not isomorphic to the target")
            return 1
        print("verified: isomorphic to the target structure")
    return 0


def cmd_isomorphic(args) -> int:
    A = inc.read_json(args.a)
    B = inc.read_json(args.b)
    witness = rec.isomorphic(A, B)
    if witness is None:
        print("none")
        return 1
    print(json.dumps(witness))
    return 0


_DISPATCH = {
    "build": cmd_build,
    "graph": cmd_graph,
    "srg": cmd_srg,
    "cliques": cmd_cliques,
    "onan": cmd_onan,
    "classify-linspace": cmd_classify_linspace,
    "reconstruct": cmd_reconstruct,
    "isomorphic": cmd_isomorphic,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except _VERIFICATION_ERRORS as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (GeometryError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
