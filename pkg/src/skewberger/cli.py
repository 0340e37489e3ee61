"""Command-line entry point: ``skewberger <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .descriptors import FAMILIES, MODULES, instantiate
from .liealg import FieldError, RepresentationError, UnsupportedConstruction

REP_ALIASES = {"standard": "std", "vector": "std", "sym": "sym2", "ext": "ext2"}


def _emit(payload, target: str | None) -> None:
    if target is None:
        return
    text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if target == "-":
        print(text)
    else:
        Path(target).write_text(text + "\n")


def _add_rep_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, help=f"one of: {', '.join(FAMILIES)}")
    p.add_argument("--rep", default="std", help=f"module descriptor, one of: {', '.join(MODULES)} (alias: standard)")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--center", action="store_true", help="append the identity as a central element")
    p.add_argument("--field", choices=("rational", "gaussian"), default="rational")
    p.add_argument("--as-real", action="store_true", help="view the complexified representation as a real one")


def _rep(args, parser):
    module = REP_ALIASES.get(args.rep, args.rep)
    params = {k: getattr(args, k) for k in ("n", "m", "p", "q") if getattr(args, k) is not None}
    if args.family in ("u", "su") and "p" not in params and "n" in params:
        params["p"] = params["n"]
    algebra = {"family": args.family, "center": "one" if args.center else "none", "field": args.field,
               "as_real": args.as_real}
    try:
        return instantiate(algebra, module, params)
    except (UnsupportedConstruction, FieldError, RepresentationError, KeyError, TypeError) as exc:
        detail = f"missing parameter {exc}" if isinstance(exc, KeyError) else str(exc)
        parser.error(f"cannot build {args.family}/{args.rep}: {detail}\n"
                     f"supported families: {', '.join(FAMILIES)}\nsupported modules: {', '.join(MODULES)}")


def _tables(spec: str) -> list[int]:
    out = set()
    for part in spec.split(","):
        lo, _, hi = part.partition("-")
        out.update(range(int(lo), int(hi or lo) + 1))
    bad = out - set(catalog.TABLES)
    if bad:
        raise argparse.ArgumentTypeError(f"no such table(s): {sorted(bad)}")
    return sorted(out)


def cmd_prolong(args, parser) -> int:
    from .prolong import prolongation

    rep = _rep(args, parser)
    kind = "skew" if args.kind == "skew" else "symmetric"
    space = prolongation(rep, kind, args.order)
    print(f"dim {space.dim}")
    print(f"{rep.name}: dim g = {rep.dim}, dim V = {rep.dim_v}, {kind} prolongation of order {args.order}")
    _emit({"algebra": rep.name, **space.to_json()}, args.json)
    return 0


def cmd_curvature(args, parser) -> int:
    from .curvature import curvature_space, derivative_space

    rep = _rep(args, parser)
    cs = curvature_space(rep, args.kind)
    ds = derivative_space(rep, cs)
    print(f"{rep.name}: {args.kind} curvature space dim {cs.dim}, derivative space dim {ds.dim}")
    _emit({"algebra": rep.name, "kind": args.kind, "dimV": rep.dim_v, "dim_g": rep.dim,
           "curvature_dim": cs.dim, "derivative_dim": ds.dim}, args.json)
    return 0


def cmd_skew_berger(args, parser) -> int:
    from .curvature import skew_berger_test

    rep = _rep(args, parser)
    res = skew_berger_test(rep)
    print(f"{rep.name}: skew-Berger {res.is_skew_berger} (span {res.span_dim} of {res.dim_g}), "
          f"symmetric {res.is_symmetric} (curvature {res.curvature_dim}, derivative {res.derivative_dim})")
    _emit(res.to_json(rep.name), args.json)
    return 0


def cmd_lagrangian(args, parser) -> int:
    from .curvature import PreconditionError, lagrangian_pair_analysis

    rep = _rep(args, parser)
    try:
        rep_report = lagrangian_pair_analysis(rep)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    r = rep_report
    print(f"{rep.name}: first skew prolongation dim {r.dim_first_prolongation}, curvature dim {r.curvature_dim}, "
          f"vanishes on Lagrangians {r.vanishes_on_lagrangians}, implication holds {r.implication_holds}")
    _emit(r.to_json(), args.json)
    return 0 if (r.implication_holds and r.vanishes_on_lagrangians) else 1


def cmd_holonomy(args, parser) -> int:
    from .supergeo import MetricError, holonomy, metric_from_json

    try:
        metric = metric_from_json(json.loads(Path(args.metric).read_text()))
    except (OSError, ValueError, MetricError) as exc:
        parser.error(f"cannot read metric {args.metric}: {exc}")
    rep = holonomy(metric, debug_span=args.debug_span)
    line = (f"holonomy dim {rep.dim}: in sp {rep.contained_in_sp}, bracket-closed {rep.bracket_closed}, "
            f"irreducible {rep.irreducible}")
    if args.debug_span:
        line += f", unrestricted-index span dim {rep.debug_dim}"
    print(line)
    _emit(rep.to_json(), args.json)
    ok = rep.contained_in_sp and rep.bracket_closed and rep.torsion_free and rep.metric_compatible
    return 0 if ok else 1


def cmd_verify(args, parser) -> int:
    report = catalog.verify(args.tables, args.max_size, args.jobs)
    print(report.text())
    if args.json:
        if args.json == "-":
            print(report.dumps())
        else:
            Path(args.json).write_text(report.dumps() + "\n")
    return 0 if report.passed else 1


def cmd_catalog(args, parser) -> int:
    if args.format == "json":
        print(json.dumps(catalog.load_table(args.table), indent=2, ensure_ascii=False))
    else:
        print(catalog.table_text(args.table))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewberger", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    json_help = "write the JSON report to PATH (stdout when PATH is omitted)"

    p = sub.add_parser("prolong", help="symmetric or skew prolongation of a representation")
    _add_rep_args(p)
    p.add_argument("--kind", choices=("skew", "sym"), default="skew")
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--json", nargs="?", const="-", metavar="PATH", help=json_help)
    p.set_defaults(func=cmd_prolong)

    p = sub.add_parser("curvature", help="curvature space and derivative space")
    _add_rep_args(p)
    p.add_argument("--kind", choices=("odd", "even"), default="odd")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH", help=json_help)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("skew-berger", help="skew-Berger and symmetric tests")
    _add_rep_args(p)
    p.add_argument("--json", nargs="?", const="-", metavar="PATH", help=json_help)
    p.set_defaults(func=cmd_skew_berger)

    p = sub.add_parser("lagrangian-pair", help="curvature of g on L + L* against the prolongation of g on L")
    _add_rep_args(p)
    p.add_argument("--json", nargs="?", const="-", metavar="PATH", help=json_help)
    p.set_defaults(func=cmd_lagrangian)

    p = sub.add_parser("holonomy", help="holonomy algebra of an odd supermetric")
    p.add_argument("--metric", required=True, help="metric JSON file")
    p.add_argument("--debug-span", action="store_true", help="also span over unrestricted derivative indices")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH", help=json_help)
    p.set_defaults(func=cmd_holonomy)

    p = sub.add_parser("verify", help="check the tables")
    p.add_argument("--tables", type=_tables, default=list(catalog.TABLES), help="e.g. 1-8, 5 or 1,3,5-6")
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", nargs="?", const="-", metavar="PATH", help=json_help)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="print a table")
    p.add_argument("--table", type=int, required=True, choices=catalog.TABLES)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
