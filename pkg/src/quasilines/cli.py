"""Command-line interface.

Exit status: 0 on success, 2 for invalid parameters, 3 for numerical
failures.  Reports go to standard output as JSON; ``--output PREFIX``
together with ``--format`` writes ``PREFIX.json``, ``PREFIX.svg`` and one
``PREFIX_NN.csv`` per curve.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import conformal, io
from .certify import bounded_turning, certify_against_bound
from .errors import BracketError, ConfigurationError, DomainError, QuasilinesError
from .figures import fig1, fig2, fig3
from .flow import Channel, channel_bound, streamline
from .motion import trace_harmonic_level, trace_hyperbolic_level, traced_bound
from .obstacle import (
    DEFAULT_H,
    GridSpec,
    RealInterval,
    VerticalSegment,
    extract_streamline,
    find_matching_slit,
    obstacle_bound,
    ring_modulus,
    solve_stream_function,
)
from .strip import BoundReport, Theorem, harmonic_level_bound, level_line_bound, symmetric_level_bound

EXIT_USAGE = 2
EXIT_NUMERIC = 3
FORMATS = ("csv", "json", "svg")

MAPS = {
    "identity": conformal.identity,
    "disk": conformal.strip_to_disk,
    "half-plane": conformal.strip_to_half_plane,
    "two-slit": conformal.two_slit_map,
}
VIEWS = {
    "identity": (-6.0, 6.0, -2.0, 2.0),
    "disk": (-1.2, 1.2, -1.2, 1.2),
    "half-plane": (-4.0, 4.0, -0.5, 4.0),
    "two-slit": (-6.0, 6.0, -4.0, 4.0),
}


class UsageError(Exception):
    pass


def _formats(text):
    chosen = tuple(f.strip() for f in text.split(",") if f.strip())
    bad = [f for f in chosen if f not in FORMATS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown format(s) {', '.join(bad)}; choose from {', '.join(FORMATS)}")
    return chosen


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _finite(text):
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("value must be finite")
    return v


def _positive_int(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("need at least 2 samples")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="quasilines", description="Distortion bounds for level lines and streamlines.")
    sub = p.add_subparsers(dest="command", required=True)

    def outputs(sp, default_formats=("json",)):
        sp.add_argument("--output", help="path prefix for written files")
        sp.add_argument("--format", type=_formats, default=default_formats, help="comma list of csv,json,svg")

    def sampling(sp):
        sp.add_argument("--x-min", type=_finite, default=-6.0)
        sp.add_argument("--x-max", type=_finite, default=6.0)
        sp.add_argument("--n", type=_positive_int, default=601)

    b = sub.add_parser("bounds", help="evaluate a closed-form distortion bound")
    b.add_argument("--theorem", required=True, choices=("level", "harmonic", "symmetric", "channel"))
    b.add_argument("--c", type=_finite)
    b.add_argument("--a", type=_finite)
    b.add_argument("--b", type=_finite)
    b.add_argument("--y0", type=_finite)
    b.add_argument("--symmetric", action="store_true", help="channel is symmetric across the real axis")
    outputs(b)

    ll = sub.add_parser("level-line", help="trace a hyperbolic-distance level line")
    ll.add_argument("--map", choices=sorted(MAPS), default="identity")
    ll.add_argument("--c", type=_finite, required=True)
    ll.add_argument("--side", type=int, choices=(1, -1), default=1)
    sampling(ll)
    outputs(ll, ("csv", "json"))

    hl = sub.add_parser("harmonic-level", help="trace a harmonic-measure level line")
    hl.add_argument("--map", choices=sorted(MAPS), default="two-slit")
    hl.add_argument("--b", type=_finite, required=True)
    sampling(hl)
    outputs(hl, ("csv", "json"))

    st = sub.add_parser("streamlines", help="streamlines of a channel at given strip heights")
    st.add_argument("--map", choices=("identity", "two-slit"), default="two-slit")
    st.add_argument("--y0", type=_floats, required=True, help="comma list of heights in (-pi/2, pi/2)")
    sampling(st)
    outputs(st, ("csv", "json"))

    ob = sub.add_parser("obstacle", help="flow around an obstacle in the strip")
    ob.add_argument("--segment", type=_finite, help="half-height H of the segment [-iH, iH]")
    ob.add_argument("--interval", type=_floats, action="append", default=[], help="a,b of a real slit (repeatable)")
    ob.add_argument("--h", type=_finite, default=DEFAULT_H)
    ob.add_argument("--x-max", type=_finite, default=6.0)
    ob.add_argument("--levels", type=_floats, default=None, help="comma list of stream-function levels")
    ob.add_argument("--modulus", action="store_true", help="also compute the ring modulus")
    ob.add_argument("--match-slit", action="store_true", help="find the slit with the same modulus")
    ob.add_argument("--field", action="store_true", help="dump the stream function as a CSV matrix")
    outputs(ob, ("csv", "json"))

    ce = sub.add_parser("certify", help="bounded-turning constant of a curve from CSV")
    ce.add_argument("--input", required=True)
    ce.add_argument("--K", type=_finite, help="distortion bound to report alongside")
    outputs(ce)

    for name, helptext in (
        ("fig1", "integer hyperbolic level lines in the strip"),
        ("fig2", "harmonic level lines of the two-slit plane"),
        ("fig3", "flow lines around the segment [-i, i]"),
    ):
        f = sub.add_parser(name, help=helptext)
        if name == "fig3":
            f.add_argument("--h", type=_finite, default=DEFAULT_H)
        if name == "fig1":
            f.add_argument("--n-max", type=int, default=4)
        outputs(f, ("csv", "json"))
    return p


def _bound_report(command, bound, warnings=()):
    return {
        "command": command,
        "inputs": bound.inputs,
        "K": bound.K,
        "theorem": bound.theorem,
        "tags": list(bound.tags),
        "notes": bound.notes,
        "C": None,
        "witness": None,
        "warnings": list(warnings),
    }


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--theorem {args.theorem} needs " + ", ".join("--" + m for m in missing))


def cmd_bounds(args):
    t = args.theorem
    if t == "level":
        _need(args, "c")
        bound = level_line_bound(args.c)
    elif t == "harmonic":
        _need(args, "a", "b")
        bound = harmonic_level_bound(args.a, args.b)
    elif t == "symmetric":
        _need(args, "b")
        bound = symmetric_level_bound(args.b)
    else:
        _need(args, "y0")
        bound = channel_bound(Channel(conformal.identity(), args.symmetric), args.y0)
    return _bound_report("bounds", bound), [], None


def _curve_report(command, curve, bound, extra=None):
    rep = _bound_report(command, bound)
    rep["curve"] = {"n": len(curve), "meta": curve.meta}
    if extra:
        rep.update(extra)
    return rep


def cmd_level_line(args):
    psi = MAPS[args.map]()
    curve = trace_hyperbolic_level(psi, args.c, args.side, (args.x_min, args.x_max), args.n)
    return _curve_report("level-line", curve, traced_bound(curve)), [curve], VIEWS[args.map]


def cmd_harmonic_level(args):
    psi = MAPS[args.map]()
    curve = trace_harmonic_level(psi, args.b, (args.x_min, args.x_max), args.n)
    b = max(args.b, 1 - args.b)
    if args.map in ("identity", "two-slit"):
        # these domains are symmetric across the real axis
        bound = symmetric_level_bound(b)
    else:
        bound = harmonic_level_bound(0.5, b)
    return _curve_report("harmonic-level", curve, bound), [curve], VIEWS[args.map]


def cmd_streamlines(args):
    channel = Channel(MAPS[args.map](), symmetric=True)
    lines = [streamline(channel, y, (args.x_min, args.x_max), args.n) for y in args.y0]
    rep = {"command": "streamlines", "inputs": {"map": args.map, "y0": args.y0}, "C": None, "witness": None, "warnings": []}
    rep["streamlines"] = [s.to_dict() for s in lines]
    rep["K"] = max(s.bound.K for s in lines)
    rep["theorem"] = Theorem.CHANNEL
    return rep, [s.curve for s in lines], VIEWS[args.map]


def _obstacle_spec(args):
    obstacles = []
    if args.segment is not None:
        obstacles.append(VerticalSegment(args.segment))
    for iv in args.interval:
        if len(iv) != 2:
            raise UsageError("--interval takes exactly two numbers a,b")
        obstacles.append(RealInterval(*iv))
    if args.x_max <= 0:
        raise UsageError("--x-max must be positive")
    return GridSpec(-args.x_max, args.x_max, args.h, tuple(obstacles))


def cmd_obstacle(args):
    spec = _obstacle_spec(args)
    top = spec.obstacle_top
    levels = args.levels
    if levels is None:
        levels = [s * k * math.pi / 20 for k in range(1, 10) for s in (1, -1)]
    for lv in levels:
        if not abs(lv) < math.pi / 2:
            raise UsageError(f"level {lv} must lie strictly between -pi/2 and pi/2")
    field_ = solve_stream_function(spec)
    curves, entries, warnings = [], [], list(field_.warnings)
    for lv in levels:
        curve = extract_streamline(field_, lv)
        entry = {"level": lv}
        if spec.obstacles:
            try:
                bound = obstacle_bound(curve, lv)
                entry.update(K=bound.K, theorem=bound.theorem, tags=list(bound.tags))
            except DomainError as exc:
                entry["K"] = None
                warnings.append(f"level {lv}: {exc}")
        curves.append(curve)
        entries.append(entry)
    rep = {
        "command": "obstacle",
        "inputs": {"segment": args.segment, "intervals": args.interval, "h": args.h, "x_max": args.x_max},
        "obstacle_top": top,
        "residual": field_.residual,
        "tip_coefficients": list(field_.singular_coefficients),
        "streamlines": entries,
        "K": None,
        "theorem": Theorem.OBSTACLE,
        "C": None,
        "witness": None,
        "warnings": warnings,
    }
    if args.modulus or args.match_slit:
        mod = ring_modulus(spec)
        rep["modulus"] = mod.value
        rep["modulus_widened"] = mod.widened_value
        warnings.extend(mod.warnings)
        if args.match_slit:
            rep["matching_slit"] = find_matching_slit(mod.value, (1e-3, 5.0), h=args.h, margin=args.x_max)
    if args.field and args.output:
        io.field_to_csv(field_, f"{args.output}_field.csv")
    X = args.x_max
    walls = [np.array([-X, X]) + 1j * math.pi / 2, np.array([-X, X]) - 1j * math.pi / 2]
    if args.segment is not None:
        walls.append(np.array([-1j, 1j]) * args.segment)
    walls += [np.array(iv, dtype=complex) for iv in args.interval]
    return rep, curves, ((-X, X, -2.0, 2.0), walls)


def cmd_certify(args):
    curve = io.curve_from_csv(args.input)
    if args.K is not None:
        bound = BoundReport(args.K, Theorem.LEVEL_LINE, {"K": args.K}, notes="supplied on the command line")
        rep_t = certify_against_bound(curve, bound)
    else:
        rep_t = bounded_turning(curve)
    rep = {
        "command": "certify",
        "inputs": {"input": str(args.input), "n": len(curve)},
        "K": args.K,
        "theorem": None,
        "C": rep_t.C,
        "witness": list(rep_t.witness),
        "report": rep_t.to_dict(),
        "warnings": [] if rep_t.subsampled_from is None else [f"subsampled from {rep_t.subsampled_from} points"],
    }
    return rep, [], None


def cmd_figure(args):
    if args.command == "fig1":
        data = fig1(args.n_max)
        inputs = {"n_max": args.n_max}
    elif args.command == "fig2":
        data = fig2()
        inputs = {"levels": 20}
    else:
        data = fig3(args.h)
        inputs = {"h": args.h}
    rep = data.report(inputs)
    rep.update(K=None, theorem=None, C=None, witness=None)
    return rep, data.curves, (data.view, data.walls)


COMMANDS = {
    "bounds": cmd_bounds,
    "level-line": cmd_level_line,
    "harmonic-level": cmd_harmonic_level,
    "streamlines": cmd_streamlines,
    "obstacle": cmd_obstacle,
    "certify": cmd_certify,
    "fig1": cmd_figure,
    "fig2": cmd_figure,
    "fig3": cmd_figure,
}


def _write(args, report, curves, view):
    formats = args.format
    if not args.output:
        return
    prefix = Path(args.output)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        width = max(2, len(str(len(curves))))
        for k, curve in enumerate(curves, start=1):
            written.append(io.curve_to_csv(curve, f"{prefix}_{k:0{width}d}.csv").name)
    if "svg" in formats and view is not None:
        walls = []
        if isinstance(view[0], tuple):
            view, walls = view
        labels = []
        for curve, entry in zip(curves, report.get("curves", [])):
            K = entry.get("K")
            if K is not None and math.isfinite(K):
                labels.append((curve.points[-1], f"K={K:.4g}"))
        written.append(io.write_svg(f"{prefix}.svg", curves, view, walls, labels).name)
    report["files"] = written
    if "json" in formats:
        io.write_json(report, f"{prefix}.json")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, curves, view = COMMANDS[args.command](args)
        _write(args, report, curves, view)
    except (UsageError, DomainError, ConfigurationError, BracketError) as exc:
        print(f"quasilines {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuasilinesError, ArithmeticError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"quasilines {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(io.dumps(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
