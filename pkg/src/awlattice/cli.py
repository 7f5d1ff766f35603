"""Command-line front end.

Exit codes: 0 ok, 1 invalid spec or usage, 2 relation failure,
3 MISMATCH, 4 INCONCLUSIVE.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import report
from .aw import check_aw_relations
from .daha import check_casimir_image, check_h_relations, pullback
from .exact import RationalityError, format_scalar, scalar
from .instances import FAMILIES, MODES, InstanceSpec, SpecError, parse_params, sample
from .lattice import CONFIRMED, INCONCLUSIVE, MISMATCH, analyze, analyze_vd

EXIT_OK, EXIT_USAGE, EXIT_RELATIONS, EXIT_MISMATCH, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
STATUS_EXIT = {CONFIRMED: EXIT_OK, MISMATCH: EXIT_MISMATCH, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for relation failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _q(text: str) -> Fraction:
    try:
        return scalar(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid rational {text!r}")


def _spec_args(p: argparse.ArgumentParser):
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--params", required=True,
                   help="comma separated k0,k1,k2,k3 (E, O) or a,b,c (VD); rationals as NUM/DEN")
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--q", type=_q, default=Fraction(2), help="rational q with |q| not 0 or 1 (default 2)")


def _spec(ns) -> InstanceSpec:
    return InstanceSpec(ns.family, ns.d, parse_params(ns.params), ns.twist, ns.q)


def _emit_json(doc: dict, path: str | None):
    if not path:
        return
    text = report.dumps(doc)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _relations(spec: InstanceSpec):
    ctx = spec.context()
    obj = spec.build()
    if spec.family == "VD":
        return obj, None, obj, check_aw_relations(obj, ctx)
    act = pullback(obj, ctx)
    rel = check_h_relations(obj, ctx) + check_aw_relations(act, ctx) + check_casimir_image(obj, act, ctx)
    return obj, obj, act, rel


def _print_relations(rel, out):
    bad = rel.failures()
    print(f"relations: {len(rel.checks) - len(bad)}/{len(rel.checks)} hold", file=out)
    for c in bad:
        print(f"  FAILED {c.name}", file=out)


def cmd_build(ns) -> int:
    spec = _spec(ns)
    _, h, act, rel = _relations(spec)
    quiet = ns.json == "-"
    out = sys.stderr if quiet else sys.stdout
    print(f"{spec.family} d={spec.d} twist={spec.twist} dim={act.dim}", file=out)
    _print_relations(rel, out)
    doc = report.build_json(spec, rel, h, act, ns.show_matrices)
    if ns.show_matrices and not quiet:
        for name, m in doc["matrices"].items():
            print(f"{name} =", file=out)
            for row in m:
                print("  [" + "  ".join(row) + "]", file=out)
    _emit_json(doc, ns.json)
    return EXIT_OK if rel.ok else EXIT_RELATIONS


def cmd_lattice(ns) -> int:
    spec = _spec(ns)
    if ns.json == "-" and ns.dot == "-":
        raise UsageError("--json - and --dot - cannot both write to stdout")
    t = time.perf_counter()
    obj, h, act, rel = _relations(spec)
    quiet = "-" in (ns.json, ns.dot)
    out = sys.stderr if quiet else sys.stdout
    if not rel.ok:
        _print_relations(rel, out)
        return EXIT_RELATIONS
    ctx = spec.context()
    if spec.family == "VD":
        rep = analyze_vd(act, ctx, spec.criterion())
        doc = report.vd_lattice_json(spec, rep, rel, spec.criterion())
        status = rep.status
    else:
        an = analyze(h, ctx, intertwine=not ns.no_intertwiner)
        rep = an.lattice
        doc = report.analysis_json(spec, an, rel)
        status = an.status
    if ns.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - t, 6)}
    print(f"{spec.family} d={spec.d} twist={spec.twist}: {status}", file=out)
    print(f"shape {rep.shape}, {len(rep.nodes)} nodes, dims {rep.node_dims()}", file=out)
    for node in doc["lattice"]["nodes"]:
        label = f"  {node['label']}" if node["label"] else ""
        print(f"  node {node['id']}: dim {node['dim']}{label}", file=out)
    for f in doc["factors"]:
        name = f["prediction"] or "unidentified"
        print(f"  factor {f['lower']}->{f['upper']}: dim {f['dim']}, {name}", file=out)
    for note in rep.notes:
        print(f"  note: {note}", file=out)
    if doc.get("verdict"):
        for c in doc["verdict"]["clauses"]:
            print(f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']}", file=out)
    _emit_json(doc, ns.json)
    if ns.dot:
        text = report.to_dot(rep, f"{spec.family}{spec.twist} d={spec.d}")
        if ns.dot == "-":
            sys.stdout.write(text)
        else:
            with open(ns.dot, "w") as fh:
                fh.write(text)
    return STATUS_EXIT[status]


def cmd_sample(ns) -> int:
    specs = sample(ns.family, ns.d, ns.count, ns.mode, ns.seed, ns.q, ns.twist)
    if ns.json:
        doc = {"seed": ns.seed, "mode": ns.mode, "instances": [s.to_dict() for s in specs]}
        _emit_json(doc, ns.json)
        if ns.json == "-":
            return EXIT_OK
    for s in specs:
        print(" ".join(s.to_args()))
    return EXIT_OK


def cmd_verify_paper(ns) -> int:
    from .verify import Corpus, expand_scopes, run_scope

    names = [x for chunk in (ns.scope or []) for x in chunk.split(",") if x]
    if not names:
        raise UsageError("verify-paper needs at least one --scope (or --scope all)")
    try:
        scopes = expand_scopes(names)
    except ValueError as exc:
        raise UsageError(str(exc))
    corpus = Corpus(dmax=ns.dmax, count=ns.count, seed=ns.seed, q=ns.q)
    ok = True
    rows = []
    for scope in scopes:
        for tally in run_scope(scope, corpus):
            ok &= tally.ok
            print(f"{scope:<12} {tally.line()}")
            for f in tally.failures[:5]:
                print(f"{'':<12}   {f}")
            rows.append({"scope": scope, "check": tally.name, "passed": tally.passed, "total": tally.total})
    print("all checks passed" if ok else "some checks FAILED")
    if ns.json:
        _emit_json({"ok": ok, "rows": rows}, ns.json)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="awlattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build a module and check its defining relations")
    _spec_args(p)
    p.add_argument("--show-matrices", action="store_true")
    p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("lattice", help="full submodule lattice with factor identification")
    _spec_args(p)
    p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    p.add_argument("--dot", metavar="PATH", help="write the Hasse diagram as DOT ('-' for stdout)")
    p.add_argument("--timing", action="store_true", help="record wall time in the report")
    p.add_argument("--no-intertwiner", action="store_true", help="skip the intertwiner witness")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("sample", help="deterministic instance sampler")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--mode", default="generic", choices=MODES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--q", type=_q, default=Fraction(2))
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify-paper", help="run the regression corpus and print pass counts")
    p.add_argument("--scope", action="append",
                   help="relations, casimir, E0..E3, O, factors, criteria, corollaries, twists, properties, all")
    p.add_argument("--dmax", type=int, default=7)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q", type=_q, default=Fraction(2))
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (SpecError, UsageError, RationalityError) as exc:
        print(f"awlattice: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
