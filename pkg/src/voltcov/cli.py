"""Command-line front end.

Subcommands: ``cover`` builds a cover from a spec file, ``check`` reports
validity/faithfulness/connectivity/simplicity straight from the voltage
data, ``reconstruct`` turns a graph plus an automorphism group into a spec,
``normalize`` clears voltages along a spanning tree, and ``selftest`` runs
the acceptance suite.

Exit codes: 0 on success, 2 for unreadable or invalid input, 3 when a size
or order cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .cover import gen_cov, is_connected_by_voltage, is_simple_by_voltage
from .dartgraph import Graph, find_isomorphism, to_dot
from .errors import (
    OrderCapExceeded,
    SizeCapExceeded,
    TooLarge,
    VoltcovError,
)
from .normalize import t_normalize
from .quotient import is_faithful_gvg, parse_action_text, reconstruct
from .voltage import (
    SpecFile,
    read_spec,
    validate_gvg,
    weight_index,
    write_spec,
)

CAP_ERRORS = (OrderCapExceeded, SizeCapExceeded, TooLarge)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_cover(args) -> int:
    spec = read_spec(args.spec)
    cover = gen_cov(spec.gvg)
    if args.format == "darts":
        _write_text(args.out, cover.graph.to_text())
    else:
        _write_text(args.out, to_dot(
            cover.graph,
            vertex_label=lambda i: "({}, {})".format(*map(str, cover.vertex_labels[i])),
        ))
    sidecar = args.out + ".fibres"
    lines = []
    for i, (v, rep) in enumerate(cover.vertex_labels):
        lines.append(f"vertex {i} base {v} coset {rep}")
    for i, (x, rep) in enumerate(cover.dart_labels):
        lines.append(f"dart {i} base {x} coset {rep}")
    _write_text(sidecar, "\n".join(lines) + "\n")
    print(f"cover: {cover.graph.n_vertices} vertices, {cover.graph.n_darts} darts, "
          f"{len(cover.graph.components())} components")
    print(f"wrote {args.out} and {sidecar}")
    return 0


def _check_report(spec: SpecFile) -> dict:
    gvg = validate_gvg(spec.gvg)
    report = {
        "schema": 1,
        "valid": True,
        "faithful": is_faithful_gvg(gvg),
        "connected": is_connected_by_voltage(gvg).connected,
        "simple": is_simple_by_voltage(gvg),
        "valences": {
            str(u): sum(weight_index(gvg, x) for x in gvg.base.darts_at(u))
            for u in gvg.base.vertices
        },
    }
    return report


def cmd_check(args) -> int:
    spec = read_spec(args.spec)
    report = _check_report(spec)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for key in ("valid", "faithful", "connected", "simple"):
            print(f"{key}: {str(report[key]).lower()}")
        for v, val in report["valences"].items():
            print(f"valence[{v}]: {val}")
    return 0


def cmd_reconstruct(args) -> int:
    graph = Graph.from_text(_read_text(args.graph))
    action = parse_action_text(_read_text(args.action), graph)
    result = reconstruct(action)
    write_spec(args.out, SpecFile(result.gvg))
    print(f"wrote {args.out}: base {result.gvg.base.n_vertices} vertices, "
          f"{result.gvg.base.n_darts} darts, group order {result.gvg.group.order}")
    if args.verify:
        iso = find_isomorphism(graph, result.cover.graph)
        if iso is None:
            print("verification FAILED: no isomorphism found", file=sys.stderr)
            return 2
        print("verified: rebuilt cover is isomorphic to the input graph")
        print("vertex map:", " ".join(f"{v}->{w}" for v, w in enumerate(iso.vertex_map)))
    return 0


def cmd_normalize(args) -> int:
    spec = read_spec(args.spec)
    tree = None
    if args.tree != "auto":
        try:
            tree = [int(tok) for tok in args.tree.split(",") if tok.strip() != ""]
        except ValueError:
            raise VoltcovError(f"--tree expects 'auto' or comma-separated dart ids, "
                               f"got {args.tree!r}") from None
    result = t_normalize(spec.gvg, tree)
    for step in result.steps:
        print(f"shift dart {step.dart} conjugator {step.conjugator}")
    write_spec(args.out, SpecFile(result.gvg, spec.action_generators))
    print(f"wrote {args.out}")
    return 0


def cmd_selftest(args) -> int:
    results = acceptance.run_all(seed=args.seed)
    failed = 0
    for res in results:
        mark = "PASS" if res.passed else "FAIL"
        print(f"[{mark}] {res.name}: {res.detail} ({res.seconds:.2f}s)")
        failed += 0 if res.passed else 1
    if failed:
        print(f"{failed} criterion(s) failed", file=sys.stderr)
        return 1
    print(f"all {len(results)} criteria passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voltcov",
        description="Generalised voltage graphs and their covering graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cover", help="build the cover described by a spec file")
    p.add_argument("spec")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--format", choices=("darts", "dot"), default="darts")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("check", help="report validity, faithfulness, connectivity, simplicity")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reconstruct",
                       help="express a graph with an automorphism group as a cover")
    p.add_argument("graph", help="graph file (dart text format)")
    p.add_argument("action", help="file of generators over v/d-prefixed points")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--verify", action="store_true",
                   help="rebuild the cover and search for an isomorphism")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("normalize", help="clear voltages along a spanning tree")
    p.add_argument("spec")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--tree", default="auto",
                   help="'auto' for the BFS tree, or comma-separated dart ids")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CAP_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (VoltcovError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
