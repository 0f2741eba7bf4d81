"""Command-line interface.

Exit codes: 0 success, 2 bad input or inadmissible spec, 3 numerical failure
(not a frame, ill-conditioned, no convergence, dimension mismatch), 4 I/O or
parse failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__, io
from ._backend import available as available_backends
from .config import Tolerances
from .errors import (
    BadInterval,
    DimensionMismatch,
    DirectSumViolated,
    DuplicateLambda,
    IllConditioned,
    InadmissibleSpec,
    NoConvergence,
    NotAFrame,
    NotPositiveDefinite,
    PartitionInvalid,
    ShapeMismatch,
    SpanMismatch,
)
from .frames import (
    frame_bounds,
    subframe_parseval_union,
    symmetric_distance,
    to_parseval,
)
from .linalg import is_partial_isometry
from .pipeline import BUILTIN_SIGNALS, example_points, grid_signal, reconstruct_on_grid
from .recon import TruncationBoundInput, truncation_bound
from .spiral import (
    ARC_MODES,
    DiskGrid,
    SamplePointSet,
    SpiralSpec,
    covering_radius,
    disk_grid_frame,
    interval_exponential_frame,
    select_spiral_points,
)

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_IO = 0, 2, 3, 4

_INPUT_ERRORS = (InadmissibleSpec, PartitionInvalid, DirectSumViolated, DuplicateLambda,
                 BadInterval)
_MATH_ERRORS = (NotAFrame, IllConditioned, NoConvergence, NotPositiveDefinite,
                DimensionMismatch, ShapeMismatch, SpanMismatch)


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _emit(args, payload):
    text = json.dumps(io._clean(payload), indent=1, sort_keys=True)
    if getattr(args, "out", None):
        io.write_json(args.out, payload)
    if not args.quiet:
        print(text)


def _read_frame(path):
    try:
        return io.read_frame(path)
    except io.FrameFileError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc


def _bounds_entry(b, tol):
    return {
        "A": io.checked(b.lower, tol),
        "B": io.checked(b.upper, tol),
        "parseval": b.is_parseval(tol),
    }


# -- subcommands -------------------------------------------------------------

def cmd_spiral_points(args, tols):
    spec = SpiralSpec(args.c, args.R, args.delta)
    try:
        spec.check()
    except InadmissibleSpec as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    if args.count is None and args.stop_radius is None:
        args.count = 3
    pset = select_spiral_points(spec, args.count, stop_radius=args.stop_radius,
                                mode=args.mode, fill=args.fill)
    gaps = pset.gaps()
    cover = covering_radius(pset, spec.R, grid_density=args.grid_density)
    payload = {
        "schema_version": io.SCHEMA_VERSION,
        "kind": "sample_points",
        "spec": {"c": spec.c, "R": spec.R, "delta": spec.delta},
        "mode": args.mode,
        "points": pset.points,
        "thetas": pset.thetas,
        "gaps": gaps,
        "max_gap": io.checked(float(gaps.max()), 2 * spec.delta),
        "gaps_valid": bool(np.all(gaps < 2 * spec.delta)),
        "min_separation": pset.min_separation,
        "covering": {
            "rho": cover.rho,
            "region_radius": cover.region_radius,
            "R_times_rho": io.checked(cover.product, 0.25),
            "satisfied": cover.satisfied,
            "grid_density": args.grid_density,
            # covering radius of the whole spiral is at most c/2 + delta
            "spiral_rho_bound": spec.c / 2 + spec.delta,
        },
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_make_frame(args, tols):
    if args.kind == "interval":
        if not args.lambdas:
            raise CliError(EXIT_INPUT, "interval frames need --lambdas")
        frame, _ = interval_exponential_frame(args.lambdas, args.halfwidth)
        meta = {"kind": "interval", "halfwidth": args.halfwidth}
    else:
        if args.points:
            pset = _load_points(args.points)
        else:
            pset = example_points(args.c)
        grid = DiskGrid.midpoint(args.R, args.N)
        frame = disk_grid_frame(pset, grid)
        meta = {"kind": "disk", "grid": grid.spec()}
    io.write_frame(args.out, frame, meta)
    if not args.quiet:
        print(f"wrote {len(frame)} vectors of dimension {frame.dim} to {args.out}")
    return EXIT_OK


def cmd_parseval(args, tols):
    frame, meta = _read_frame(args.input)
    res = to_parseval(frame, subspace=args.subspace, tol_rank=tols.gs, backend=args.backend)
    b = frame_bounds(res.parseval, on_span=args.subspace, backend=args.backend)
    iso = is_partial_isometry(res.w, tols.frame)
    if args.output:
        io.write_frame(args.output, res.parseval, {**meta, "derived_from": args.input})
    if args.emit_transfer:
        io.write_matrix_csv(args.emit_transfer, res.transfer)
    payload = io.report("parseval", {
        "input": args.input, "subspace": args.subspace, "tolerances": tols.as_dict(),
    }, {
        "n_vectors": len(frame),
        "span_dim": res.span_dim,
        "bounds": _bounds_entry(b, tols.bounds),
        "isometry_defect": io.checked(iso.coisometry_defect, tols.frame),
        "partial_isometry_defect": io.checked(iso.defect, tols.frame),
        "symmetric_distance": symmetric_distance(res.parseval, frame),
        "transfer_csv": args.emit_transfer,
        "output": args.output,
    })
    _emit(args, payload)
    return EXIT_OK


def _load_points(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_IO, f"{path}: invalid JSON ({exc})") from exc
    if isinstance(data, dict) and "points" in data:
        return SamplePointSet.from_points(data["points"])
    if isinstance(data, dict) and "vectors" in data:
        frame, _ = _read_frame(path)
        if frame.labels is None:
            raise CliError(EXIT_INPUT, f"{path}: frame has no frequency labels")
        return SamplePointSet.from_points(np.asarray(frame.labels, dtype=float))
    raise CliError(EXIT_IO, f"{path}: neither a point set nor a frame file")


def cmd_reconstruct(args, tols):
    pset = _load_points(args.frame) if args.frame else example_points()
    grid = DiskGrid.midpoint(args.R, args.N)
    if args.signal in BUILTIN_SIGNALS:
        if len(pset) != 3:
            raise CliError(EXIT_MATH, "builtin signals need exactly three frequencies")
        signal = grid_signal(pset, BUILTIN_SIGNALS[args.signal], grid)
    else:
        try:
            signal = io.read_signal(args.signal)
        except io.FrameFileError as exc:
            raise CliError(EXIT_IO, str(exc)) from exc
    rec = reconstruct_on_grid(pset, signal, args.R, args.N, backend=args.backend)
    err = np.abs(rec.reconstructed - rec.original)
    with open(args.out_csv, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["node_index", "x", "y", "re_original", "re_reconstructed", "abs_error"])
        for i in range(0, len(grid), args.stride):
            x, y = grid.nodes[i]
            w.writerow([i, repr(float(x)), repr(float(y)), repr(float(rec.original[i].real)),
                        repr(float(rec.reconstructed[i].real)), repr(float(err[i]))])
        # summary row: relative L2 error in the last column
        w.writerow(["summary", "", "", "", "relative_l2_error", repr(rec.relative_error)])
    payload = io.report("reconstruct", {
        "frame": args.frame or "builtin example points", "signal": args.signal,
        "R": args.R, "N": args.N, "stride": args.stride,
    }, {
        "relative_l2_error": io.checked(rec.relative_error, tols.frame * 10),
        "bounds": {"A": io.checked(rec.bounds[0], tols.bounds),
                   "B": io.checked(rec.bounds[1], tols.bounds)},
        "isometry_defect": io.checked(rec.isometry_defect, tols.frame),
        "csv": args.out_csv,
    })
    _emit(args, payload)
    return EXIT_OK


def cmd_error_bound(args, tols):
    try:
        inp = TruncationBoundInput(args.k, args.deriv_l1, args.A, args.R, args.N_tilde)
        rep = truncation_bound(inp, args.formula, spacing=args.spacing)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    payload = io.report("error-bound", rep.inputs, {
        "bound": rep.bound, "formula_id": rep.formula_id,
    })
    _emit(args, payload)
    return EXIT_OK


def parse_partition(text):
    """``"1,2;3,4"`` (1-based) -> ``[[0, 1], [2, 3]]``."""
    try:
        parts = [[int(tok) - 1 for tok in chunk.split(",") if tok.strip()]
                 for chunk in text.split(";")]
    except ValueError as exc:
        raise PartitionInvalid(f"cannot parse partition {text!r}") from exc
    if any(i < 0 for p in parts for i in p):
        raise PartitionInvalid("partition indices are 1-based")
    return parts


def cmd_compare(args, tols):
    frame, _ = _read_frame(args.frame)
    parts = parse_partition(args.partition)
    u = subframe_parseval_union(frame, parts, tol_rank=tols.gs,
                                coincide_tol=tols.coincide, backend=args.backend)
    full_b = frame_bounds(u.full.parseval, on_span=True, backend=args.backend)
    payload = io.report("compare", {
        "frame": args.frame, "partition": args.partition, "tolerances": tols.as_dict(),
    }, {
        "coincide": u.coincides,
        "deviation": io.checked(u.deviation, tols.coincide),
        "part_dims": list(u.part_dims),
        "union_bounds_block_coordinates": _bounds_entry(u.block_bounds, tols.bounds),
        "union_bounds_ambient": _bounds_entry(u.ambient_bounds, tols.bounds),
        "full_bounds": _bounds_entry(full_b, tols.bounds),
    })
    _emit(args, payload)
    return EXIT_OK


def cmd_frame_bounds(args, tols):
    frame, _ = _read_frame(args.frame)
    b = frame_bounds(frame, on_span=args.on_span, tol_rank=tols.gs, backend=args.backend)
    payload = io.report("frame-bounds", {"frame": args.frame, "on_span": args.on_span}, {
        **_bounds_entry(b, tols.bounds),
        "condition": b.condition,
        "tight": abs(b.upper - b.lower) <= tols.bounds * max(1.0, b.upper),
    })
    _emit(args, payload)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="framecast", description="Parseval frames, spiral Fourier sampling and truncation bounds.")
    p.add_argument("--version", action="version", version=f"framecast {__version__}")
    p.add_argument("--tol", type=float, help="base tolerance (overrides FRAMECAST_TOL)")
    p.add_argument("--config", help="JSON file with tolerance overrides")
    p.add_argument("--backend", choices=sorted(available_backends()),
                   help="kernel implementation")
    p.add_argument("-q", "--quiet", action="store_true", help="do not print the report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spiral-points", help="select frequencies along an Archimedean spiral")
    s.add_argument("--c", type=float, required=True)
    s.add_argument("--R", type=float, required=True)
    s.add_argument("--delta", type=float, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--count", type=int)
    g.add_argument("--stop-radius", type=float)
    s.add_argument("--mode", choices=ARC_MODES, default="paper")
    s.add_argument("--fill", type=float, default=0.9, help="gap as a fraction of 2*delta")
    s.add_argument("--grid-density", type=int, default=200)
    s.add_argument("--out")
    s.set_defaults(func=cmd_spiral_points)

    s = sub.add_parser("make-frame", help="write an exponential frame file")
    s.add_argument("kind", choices=("interval", "disk"))
    s.add_argument("--lambdas", type=float, nargs="+")
    s.add_argument("--halfwidth", type=float, default=0.5)
    s.add_argument("--points", help="point-set JSON (defaults to the worked example)")
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--R", type=float, default=0.25)
    s.add_argument("--N", type=int, default=50)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_make_frame)

    s = sub.add_parser("parseval", help="convert a frame file to its Parseval frame")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", dest="output", help="Parseval frame file")
    s.add_argument("--report", dest="out", help="report JSON")
    s.add_argument("--emit-transfer", metavar="CSV", help="write C with g_i = sum_j C_ij f_j")
    s.add_argument("--subspace", action="store_true",
                   help="accept frames spanning a proper subspace")
    s.set_defaults(func=cmd_parseval)

    s = sub.add_parser("reconstruct", help="reconstruct a signal on the disk grid")
    s.add_argument("--frame", help="point-set or frame JSON carrying the frequencies")
    s.add_argument("--signal", default="fig1",
                   help=f"builtin ({', '.join(BUILTIN_SIGNALS)}) or signal JSON path")
    s.add_argument("--R", type=float, default=0.25)
    s.add_argument("--N", type=int, default=50)
    s.add_argument("--stride", type=int, default=1, help="write every k-th node")
    s.add_argument("--out-csv", required=True)
    s.add_argument("--report", dest="out")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("error-bound", help="truncation error bound")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--deriv-l1", type=float, required=True)
    s.add_argument("--A", type=float, required=True)
    s.add_argument("--R", type=float, required=True)
    s.add_argument("--N-tilde", type=int, required=True)
    s.add_argument("--formula", choices=("thm32", "eq35"), default="thm32")
    s.add_argument("--spacing", type=float, default=1.0,
                   help="c in the assumption |lambda_n| >= c n")
    s.add_argument("--out")
    s.set_defaults(func=cmd_error_bound)

    s = sub.add_parser("compare", help="union of per-part Parseval frames vs. the full one")
    s.add_argument("--frame", required=True)
    s.add_argument("--partition", required=True, help='1-based, e.g. "1,2;3,4"')
    s.add_argument("--out")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("frame-bounds", help="optimal frame bounds of a frame file")
    s.add_argument("--frame", required=True)
    s.add_argument("--on-span", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_frame_bounds)
    return p


def _tolerances(args):
    tols = Tolerances.from_env()
    if args.config:
        try:
            tols = Tolerances.from_file(args.config, base=tols)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(EXIT_IO, f"cannot read config {args.config}: {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise CliError(EXIT_INPUT, f"bad config {args.config}: {exc}") from exc
    if args.tol is not None:
        try:
            tols = tols.with_base(args.tol)
        except ValueError as exc:
            raise CliError(EXIT_INPUT, str(exc)) from exc
    return tols


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "stride", 1) < 1:
        parser.error("--stride must be at least 1")
    try:
        tols = _tolerances(args)
        return args.func(args, tols)
    except CliError as exc:
        code, msg = exc.code, str(exc)
    except _INPUT_ERRORS as exc:
        code, msg = EXIT_INPUT, str(exc)
    except _MATH_ERRORS as exc:
        code, msg = EXIT_MATH, str(exc)
    except OSError as exc:
        code, msg = EXIT_IO, str(exc)
    except ValueError as exc:
        code, msg = EXIT_INPUT, str(exc)
    print(f"framecast: error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
