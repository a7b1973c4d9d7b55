"""Command-line front end.

Exit codes: 0 success, 1 usage or domain error, 2 diameter counterexample
found by ``scan``, 3 invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import oracle as orc
from .analysis import components_and_diameters, degree_formula, is_complete
from .errors import IdealGraphError
from .graph import (
    GAMMA0,
    SCHEMA_VERSION,
    LoopGraph,
    build_gamma0,
    build_gamma1,
    export_dot,
    export_json,
)
from .properties import FAIL, verify_ring
from .ring_core import (
    classify_ring,
    enumerate_ideals,
    factor,
    jacobson_radical,
    maximal_ideals,
    minimal_ideals,
)
from .scan import default_jobs, scan_range

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graph_table(g: LoopGraph, title: str, field: bool = False) -> str:
    if not len(g):
        return f"{title}: 0 vertices" + (" (field)" if field else "") + "\n"
    lines = [f"{title}: {len(g)} vertices, {g.edge_count} edges"]
    width = max(len(str(v)) for v in g.vertices)
    for i, v in enumerate(g.vertices):
        nbrs = " ".join(str(u) for u in g.neighbors(v))
        loop = " (loop)" if i in g.loops else ""
        lines.append(f"  {str(v):>{width}}  deg {g.adj[i].bit_count():>3}{loop}  : {nbrs}")
    return "\n".join(lines) + "\n"


def cmd_graph(args) -> int:
    ring = factor(args.n)
    g = build_gamma1(ring) if args.gamma1 else build_gamma0(ring)
    if args.format == "dot":
        text = export_dot(g)
    elif args.format == "json":
        text = export_json(g)
    else:
        name = "Gamma_1" if args.gamma1 else "Gamma_0"
        text = _graph_table(g, f"{name}({ring})", field=classify_ring(ring).is_field)
    _emit(text, args.output)
    return EXIT_OK


def cmd_degrees(args) -> int:
    ring = factor(args.n)
    g = build_gamma0(ring)
    reports = [degree_formula(ring, i, g) for i in enumerate_ideals(ring, nontrivial_only=True)]
    reports.sort(key=lambda r: r.vertex.divisor)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["divisor", "exponents", "a_set_size", "degree", "degree_brute"])
        for r in reports:
            exps = "(" + ",".join(map(str, r.vertex.exponents)) + ")"
            writer.writerow([r.vertex.divisor, exps, len(r.a_set), r.degree_formula, r.degree_brute])
        text = buf.getvalue()
    elif args.format == "json":
        text = json.dumps({
            "ring": {"n": args.n},
            "degrees": [
                {
                    "divisor": r.vertex.divisor,
                    "exponents": list(r.vertex.exponents),
                    "a_set": sorted(r.a_set),
                    "degree": r.degree_formula,
                    "degree_brute": r.degree_brute,
                }
                for r in reports
            ],
            "schema_version": SCHEMA_VERSION,
        }) + "\n"
    else:
        lines = [f"{'divisor':>8} {'exponents':>12} {'|A|':>3} {'formula':>7} {'brute':>5}"]
        for r in reports:
            exps = "(" + ",".join(map(str, r.vertex.exponents)) + ")"
            lines.append(
                f"{r.vertex.divisor:>8} {exps:>12} {len(r.a_set):>3} {r.degree_formula:>7} {r.degree_brute:>5}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    bad = [r for r in reports if not r.agrees]
    for r in bad:
        print(f"degree mismatch at {r.vertex}: formula {r.degree_formula}, brute {r.degree_brute}",
              file=sys.stderr)
    return EXIT_INVARIANT if bad else EXIT_OK


def cmd_ring(args) -> int:
    ring = factor(args.n)
    cls = classify_ring(ring)
    ideals = enumerate_ideals(ring)
    info = {
        "ring": {"n": args.n},
        "factors": [[f.p, f.gamma] for f in ring.factors],
        "classification": {
            "local": cls.is_local,
            "field": cls.is_field,
            "reduced": cls.is_reduced,
            "vnr": cls.is_vnr,
        },
        "ideals": [i.divisor for i in ideals],
        "jacobson_radical": jacobson_radical(ring).divisor,
        "maximal_ideals": [m.divisor for m in maximal_ideals(ring)],
        "minimal_ideals": [m.divisor for m in minimal_ideals(ring)],
        "schema_version": SCHEMA_VERSION,
    }
    if args.format == "json":
        text = json.dumps(info) + "\n"
    else:
        flags = ", ".join(f"{k}: {'yes' if v else 'no'}" for k, v in info["classification"].items())
        text = (
            f"{ring} = " + " x ".join(f"Z_{f.value}" for f in ring.factors) + "\n"
            f"  {flags}\n"
            f"  {len(ideals)} ideals: " + " ".join(f"<{d}>" for d in sorted(info["ideals"])) + "\n"
            f"  J(R) = Nil(R) = <{info['jacobson_radical']}>\n"
            f"  maximal: " + " ".join(f"<{d}>" for d in info["maximal_ideals"]) + "\n"
            "  minimal: " + " ".join(f"<{d}>" for d in info["minimal_ideals"]) + "\n"
        )
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.oracle and args.n > orc.GRAPH_ORACLE_CAP:
        raise UsageError(f"--oracle supports n <= {orc.GRAPH_ORACLE_CAP}")
    ring = factor(args.n)
    results = verify_ring(ring, oracle=args.oracle)
    print(f"verify {ring}" + (" with element oracle" if args.oracle else ""))
    for r in results:
        print("  " + r.line())
    failed = [r for r in results if r.status == FAIL]
    print(f"{len(results) - len(failed)}/{len(results)} checks without failure")
    return EXIT_INVARIANT if failed else EXIT_OK


def cmd_scan(args) -> int:
    jobs = args.jobs if args.jobs is not None else default_jobs()
    report = scan_range(args.n_from, args.n_to, parallelism=jobs)
    if args.output:
        _emit(report.to_jsonl(), args.output)
    sys.stdout.write(report.summary())
    return EXIT_COUNTEREXAMPLE if report.flagged else EXIT_OK


def local_square_zero_shape(g: LoopGraph, q: int) -> bool:
    """True iff ``g`` is K_{q+1} plus an isolated vertex."""
    comps = components_and_diameters(g)
    sizes = sorted(len(c.indices) for c in comps)
    if sizes != [1, q + 1]:
        return False
    big = next(c for c in comps if len(c.indices) == q + 1)
    return is_complete(g.induced(big.indices))


def cmd_local_sq(args) -> int:
    q = args.q
    ring = orc.make_local_square_zero(q)
    g = orc.oracle_graph(ring, GAMMA0, cap=ring.size)
    ok = local_square_zero_shape(g, q)
    if args.format == "dot":
        text = export_dot(g)
    elif args.format == "json":
        text = export_json(g)
    else:
        shape = f"K_{q + 1} ∪ K_1" if ok else "unexpected shape"
        text = _graph_table(g, f"Gamma_0({ring.description})") + f"shape: {shape}\n"
    _emit(text, args.output)
    if not ok:
        print(f"Gamma_0 of {ring.description} is not K_{q + 1} ∪ K_1", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="idealgraph", description="Ideal graphs Gamma_0/Gamma_1 of finite rings")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("graph", help="print Gamma_0(Z_n) or Gamma_1(Z_n)")
    g.add_argument("n", type=int)
    g.add_argument("--format", choices=("dot", "json", "table"), default="table")
    g.add_argument("--gamma1", action="store_true", help="include 0 and R, with loops")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_graph)

    d = sub.add_parser("degrees", help="degree table, closed form against brute force")
    d.add_argument("n", type=int)
    d.add_argument("--format", choices=("csv", "json", "table"), default="csv")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_degrees)

    r = sub.add_parser("ring", help="structure of Z_n")
    r.add_argument("n", type=int)
    r.add_argument("--format", choices=("json", "table"), default="table")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_ring)

    v = sub.add_parser("verify", help="run the lemma and theorem checks for Z_n")
    v.add_argument("n", type=int)
    v.add_argument("--oracle", action="store_true", help="also compare with the element oracle")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", help="look for components of diameter > 2")
    s.add_argument("n_from", type=int, metavar="FROM")
    s.add_argument("n_to", type=int, metavar="TO")
    s.add_argument("-j", "--jobs", type=int, help="worker processes (default $IDEALGRAPH_JOBS or 1)")
    s.add_argument("-o", "--output", help="write the JSON-lines report here")
    s.set_defaults(func=cmd_scan)

    lq = sub.add_parser("local-sq", help="Gamma_0 of F_q[X,Y]/<X,Y>^2")
    lq.add_argument("q", type=int)
    lq.add_argument("--format", choices=("dot", "json", "table"), default="table")
    lq.add_argument("-o", "--output")
    lq.set_defaults(func=cmd_local_sq)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"idealgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IdealGraphError, OSError) as exc:
        print(f"idealgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
