"""Command-line front end.

Exit codes: 0 success (exact value, verified certificate, clean report),
1 error (bad input, unsupported graph), 2 bounds only (budget exhausted),
3 a check failed (refuted certificate, table disagreement, property violation).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import constructions as C
from .graph import Family, FamilySpec, Graph, GraphError, load_graph
from .harness import crosscheck, render_crosscheck, reproduce_table
from .invariants import Parameter, compute
from .labeling import LabelingCertificate, certify, recheck

EXIT_OK, EXIT_ERROR, EXIT_BOUNDS, EXIT_FAILED = 0, 1, 2, 3

CONSTRUCTIONS = {
    "bipartite-circulant": Family.COMPLETE_BIPARTITE,
    "one-factorization": Family.COMPLETE,
    "book-labeling": Family.BOOK,
    "even-cycle": Family.CYCLE,
    "even-path": Family.PATH,
}


def _write_json(path: str, data: dict):
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def cmd_compute(args) -> int:
    g = load_graph(args.graph)
    res = compute(g, Parameter(args.param), budget=args.budget_secs)
    if res.exact:
        print(f"{args.param} = {res.value}  [{res.method.value}]")
    else:
        print(f"{args.param} in [{res.lo}, {res.hi}]  [{res.method.value}]")
    for note in res.notes:
        print(f"  note: {note}")
    if args.out:
        data = res.to_json()
        data["graph"] = g.to_edge_list()
        _write_json(args.out, data)
        print(f"certificate: {args.out}")
    return EXIT_OK if res.exact else EXIT_BOUNDS


def _construct(name: str, spec: FamilySpec, budget) -> LabelingCertificate:
    want = CONSTRUCTIONS[name]
    if spec.family is not want:
        raise GraphError(f"{name} applies to {want.value} graphs, not {spec}")
    p = spec.params
    if name == "bipartite-circulant":
        s, t = max(p), min(p)
        return C.construct_bipartite_labeling(s, t)
    if name == "one-factorization":
        if p[0] % 2:
            raise GraphError("one-factorization needs a complete graph of even order")
        return C.construct_complete_even_labeling(p[0] // 2, allow_small=True)
    if name == "book-labeling":
        return C.construct_book_labeling(p[0], budget=budget)
    if p[0] % 2:
        raise GraphError(f"{name} needs an even number of vertices")
    if name == "even-cycle":
        return C.construct_even_cycle_labeling(p[0] // 2)
    return C.construct_even_path_labeling(p[0] // 2)


def cmd_construct(args) -> int:
    spec = FamilySpec.parse(args.graph)
    cert = _construct(args.construction, spec, args.budget_secs)
    data = cert.to_json()
    data["notes"] = list(cert.notes)
    print(f"{args.construction} on {spec}: k={cert.k} proper={cert.proper} "
          f"distinguishing={cert.distinguishing}")
    for note in cert.notes:
        print(f"  note: {note}")
    if args.out:
        _write_json(args.out, data)
        print(f"certificate: {args.out}")
    return EXIT_OK if cert.proper and cert.distinguishing else EXIT_FAILED


def _load_certificate(path: str, g: Graph) -> LabelingCertificate:
    data = json.loads(Path(path).read_text())
    if "certificate" in data and "labels" not in data:
        data = data["certificate"]
        if data is None:
            raise GraphError("result file holds no certificate")
    if "graph" in data and data["graph"] != g.to_edge_list():
        raise GraphError("certificate was issued for a different graph")
    size = g.m if data.get("kind") == "edge" else g.n
    if len(data.get("labels", [])) != size:
        raise GraphError(f"certificate has {len(data.get('labels', []))} labels, "
                         f"graph has {size} {'edges' if data.get('kind') == 'edge' else 'vertices'}")
    return LabelingCertificate.from_json(data, graph=g)


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    cert = _load_certificate(args.certificate, g)
    ok, problems = recheck(cert)
    if ok:
        print(f"verified: k={cert.k} proper={cert.proper} distinguishing={cert.distinguishing}")
        return EXIT_OK
    fresh = certify(g, cert.labeling)
    print("refuted:")
    for p in problems:
        print(f"  {p}")
    if fresh.witness is not None:
        print(f"  witness automorphism: {list(fresh.witness)}")
    return EXIT_FAILED


def cmd_table(args) -> int:
    report = reproduce_table(budget=args.budget_secs, extra=args.extra)
    print(report.render())
    if args.out:
        _write_json(args.out, report.to_json())
        print(f"report: {args.out}")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_crosscheck(args) -> int:
    report = crosscheck(seed=args.seed, count=args.count, max_vertices=args.max_vertices)
    print(render_crosscheck(report))
    if args.out:
        _write_json(args.out, report)
        print(f"report: {args.out}")
    return EXIT_OK if not report["violations"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chromdist",
                                 description="Distinguishing chromatic index and friends, exactly.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute one parameter of one graph")
    p.add_argument("--graph", required=True, help="family shorthand (cycle:6) or edge-list file")
    p.add_argument("--param", required=True, choices=[x.value for x in Parameter])
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--out", help="write the result and its certificate as JSON")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("construct", help="build and verify a closed-form labeling")
    p.add_argument("--graph", required=True, help="family shorthand")
    p.add_argument("--construction", required=True, choices=sorted(CONSTRUCTIONS))
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-check a certificate against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="reproduce the table of known values")
    p.add_argument("--budget-secs", type=float, default=300.0, help="budget per instance")
    p.add_argument("--extra", nargs="*", default=[], help="additional family shorthands")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("crosscheck", help="randomized and exhaustive property checks")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-vertices", type=int, default=7)
    p.add_argument("--out")
    p.set_defaults(func=cmd_crosscheck)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GraphError, C.ConstructionError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
