"""Command line entry point: ``inflecta {mu,polygons,census,analyze,fixtures}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import geometry
from .census import census_report, write_catalog
from .curve import build_embedding, canonical_form, parse_curve
from .errors import InflectaError
from .mu import compute_mu
from .polygons import admissible_polygons, dump_polygons, polygon_stats

log = logging.getLogger("inflecta")


def _embedding(text: str):
    curve = parse_curve(text)
    return build_embedding(curve)


def cmd_mu(args) -> int:
    emb = _embedding(args.curve)
    polys = admissible_polygons(emb)
    out = {"planar_key": canonical_form(emb).planar_key, "m": emb.m}
    out.update(compute_mu(polys, emb.m).to_json())
    out["polygon_stats"] = polygon_stats(polys)
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_polygons(args) -> int:
    polys = admissible_polygons(_embedding(args.curve))
    text = dump_polygons(polys)
    if text:
        print(text)
    return 0


def cmd_census(args) -> int:
    report = census_report(args.max_m, workers=args.workers)
    if args.out:
        write_catalog(report.entries, args.out)
        log.info("wrote %d entries to %s", len(report.entries), args.out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.summary_csv())
    print(report.summary_text())
    return 0


def cmd_analyze(args) -> int:
    if args.csv:
        curve = geometry.read_curve(args.csv)
    else:
        curve = geometry.read_curve(args.json)
    if args.samples:
        if "trig" not in curve.source:
            print("inflecta: error: --samples needs a trig spec", file=sys.stderr)
            return 2
        spec = dict(curve.source["trig"], samples=args.samples)
        curve = geometry.parse_curve_text(json.dumps({"trig": spec}))
    report = geometry.full_report(curve, tol_angle=args.tol_angle)
    print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    if args.svg:
        from .svg import render_svg

        with open(args.svg, "w") as fh:
            fh.write(render_svg(curve, report))
    return 0


def cmd_fixtures(args) -> int:
    from .fixtures import emit_fixtures, emit_random_curves

    names = emit_fixtures(args.out)
    if args.random:
        names += emit_random_curves(args.out, args.random, args.seed)
    for name in names:
        print(name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="inflecta", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized runs (logged)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="mu of a signed Gauss code")
    p.add_argument("--curve", required=True, help='e.g. "1 1 / + / outer=0:L"')
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("polygons", help="admissible polygons as JSON lines")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=cmd_polygons)

    p = sub.add_parser("census", help="planar classes and mu up to max-m crossings")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--out", help="catalog JSONL path")
    p.add_argument("--csv", help="summary CSV path")
    p.add_argument("--workers", type=int, default=None, help="processes (default INFLECTA_THREADS or 1)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("analyze", help="geometric report of a sampled curve")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--csv", help="x,y polyline")
    src.add_argument("--json", help='{"trig": {...}} or {"points": [...]}')
    p.add_argument("--svg", help="also render the curve")
    p.add_argument("--samples", type=int, default=None, help="resample a trig spec")
    p.add_argument("--tol-angle", type=float, default=geometry.TOL_ANGLE)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fixtures", help="write the fixture curves and expected values")
    p.add_argument("--out", required=True)
    p.add_argument("--random", type=int, default=0, help="also write N seeded random trig curves")
    p.set_defaults(func=cmd_fixtures)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    log.info("seed %d", args.seed)
    if args.command == "census" and args.max_m < 0:
        print("inflecta: error: --max-m must be >= 0", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InflectaError as exc:
        print(f"inflecta: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        # unreadable or malformed input files
        print(f"inflecta: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
