"""Command-line surface: build bundles, inspect them, export meshes."""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

from .errors import AlphaFamilyError
from .shell import (
    FamilyBundle,
    build_bundle,
    export_mesh,
    parse_points,
    signatures_csv,
    spectrum_csv,
)


def _load_bundle(path):
    return FamilyBundle.from_json(Path(path).read_text())


def _cmd_build(args):
    path = Path(args.input)
    pset = parse_points(path.read_text(), scale=args.scale, source=path.name)
    t0 = time.perf_counter()
    bundle = build_bundle(pset)
    elapsed = time.perf_counter() - t0
    out = Path(args.output) if args.output else path.with_suffix(".bundle.json")
    out.write_text(bundle.to_json())
    sim = bundle.stats["simplices"]
    print(
        f"{bundle.n} points -> {sim['tetrahedra']} cells, "
        f"{bundle.interval_count} intervals, wrote {out} "
        f"({elapsed:.2f}s)"
    )
    return 0


def _cmd_spectrum(args):
    bundle = _load_bundle(args.bundle)
    if args.csv:
        sys.stdout.write(spectrum_csv(bundle))
        return 0
    for i, (v, a) in enumerate(zip(bundle.spectrum_exact, bundle.spectrum_alpha)):
        if v is math.inf:
            print(f"{i:6d}  alpha^2 = inf")
        else:
            print(f"{i:6d}  alpha^2 = {v}  (alpha = {a:.9g})")
    return 0


def _cmd_signatures(args):
    bundle = _load_bundle(args.bundle)
    if args.csv:
        sys.stdout.write(signatures_csv(bundle))
        return 0
    sig = bundle.signature_data
    alphas = bundle.spectrum_alpha
    print(f"{'interval':>8} {'alpha_range':>28} {'c':>5} {'volume':>14} {'area':>14}")
    for i in range(bundle.interval_count):
        hi = alphas[i + 1]
        hi_s = "inf" if hi is math.inf else f"{hi:.6g}"
        print(
            f"{i:>8} {f'({alphas[i]:.6g}, {hi_s})':>28} "
            f"{sig['components'][i]:>5} {sig['volume']['float'][i]:>14.6g} "
            f"{sig['area'][i]:>14.6g}"
        )
    return 0


def _cmd_export(args):
    bundle = _load_bundle(args.bundle)
    classes = tuple(c.strip() for c in args.classes.split(",") if c.strip())
    text = export_mesh(
        bundle,
        args.index,
        fmt=args.format,
        classes=classes,
        closed_singular=args.closed_singular,
    )
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_stats(args):
    bundle = _load_bundle(args.bundle)
    stats = bundle.stats
    sim = stats["simplices"]
    print(f"points:      {bundle.n}")
    print(
        "simplices:   "
        f"{sim['vertices']} vertices, {sim['edges']} edges, "
        f"{sim['triangles']} triangles, {sim['tetrahedra']} cells "
        f"({sim['removed_flat']} flat removed)"
    )
    print(f"spectrum:    {bundle.interval_count - 1} thresholds")
    flips = stats["flips"]
    print(
        f"flips:       {flips['triangle_to_edge']} triangle-to-edge, "
        f"{flips['edge_to_triangle']} edge-to-triangle"
    )
    print(f"record size: {stats['record_bytes']} bytes per triangle")
    for phase in ("triangulation", "intervals"):
        ph = stats[phase]
        hist = ph["depth_histogram"]
        total = sum(hist.values()) or 1
        deep = sum(v for k, v in hist.items() if k != "0")
        max_depth = max((int(k) for k in hist), default=0)
        mean = sum(int(k) * v for k, v in hist.items()) / total
        print(f"[{phase}]")
        print(
            f"  predicates: {ph['orientation_calls']} orientation, "
            f"{ph['in_sphere_calls']} in-sphere, "
            f"{ph['edge_attached_calls']}+{ph['triangle_attached_calls']} attachment"
        )
        print(
            f"  tie-breaks: {deep} deep evaluations, "
            f"max depth {max_depth}, mean {mean:.6f}"
        )
        print(
            f"  long ints:  {ph['long_integer_muls']} muls, "
            f"{ph['long_integer_adds']} adds"
        )
    return 0


def make_parser():
    parser = argparse.ArgumentParser(
        prog="alphafamily",
        description="Exact alpha-shape families of 3D point sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="triangulate and write a family bundle")
    p.add_argument("input", help="point file: three decimals per line")
    p.add_argument("--scale", type=int, default=0,
                   help="decimal shift applied to make coordinates integral")
    p.add_argument("-o", "--output", help="bundle path (default: <input>.bundle.json)")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("spectrum", help="list the alpha thresholds")
    p.add_argument("bundle")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("signatures", help="tabulate the signature series")
    p.add_argument("bundle")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_signatures)

    p = sub.add_parser("export", help="write a mesh of one family member")
    p.add_argument("bundle")
    p.add_argument("--index", type=int, required=True,
                   help="spectrum interval index")
    p.add_argument("--format", choices=("off", "obj"), default="off")
    p.add_argument("--classes", default="regular,singular",
                   help="comma list from regular,singular,interior")
    p.add_argument("--closed-singular", action="store_true",
                   help="emit singular triangles twice with opposite orientations")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("stats", help="report pipeline counters from a bundle")
    p.add_argument("bundle")
    p.set_defaults(func=_cmd_stats)
    return parser


def cli(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AlphaFamilyError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1
    except OSError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(cli())


if __name__ == "__main__":
    main()
