"""Command line entry point: ``slicedgw <compute|spiral|bench|pairwise> [flags]``.

Exit codes: 0 success, 1 I/O or parse error, 2 input-contract violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from .core import sample_directions
from .experiments import (
    METRICS,
    bench,
    compute_metric,
    default_angles,
    pairwise_matrix,
    spiral_rows,
    spiral_study,
)
from .io import (
    CloudFormatError,
    list_cloud_files,
    normalize_cloud,
    read_cloud,
    subsample,
    write_csv,
)
from .mds import classical_mds
from .invariant import RisgwConfig
from .sliced import DEFAULT_L, prepare, sliced_costs


class ContractError(ValueError):
    """Inputs are readable but violate a precondition (exit code 2)."""


def _angle(tok):
    """Radians, with ``pi`` multiples such as ``pi/8``, ``3pi/4``, ``0.5pi``."""
    tok = tok.strip().lower().replace("*", "")
    if "pi" not in tok:
        return float(tok)
    head, tail = tok.split("pi", 1)
    num = float(head) if head else 1.0
    den = float(tail.lstrip("/")) if tail else 1.0
    return num * math.pi / den


def _float_list(text):
    return [_angle(t) for t in text.split(",")]


def _int_list(text):
    return [int(float(t)) for t in text.split(",")]


def _cfg(args):
    return RisgwConfig(max_iters=args.max_iters, restarts=args.restarts, seed=args.seed)


def _add_common(p, L=DEFAULT_L):
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--L", type=int, default=L, help=f"number of directions (default {L})")
    p.add_argument("--output", default=None, help="output path (default stdout)")


def _add_opt(p):
    p.add_argument("--max-iters", type=int, default=30, help="optimizer iterations for ris* metrics")
    p.add_argument("--restarts", type=int, default=0, help="extra random starting frames for ris* metrics")


def build_parser():
    parser = argparse.ArgumentParser(prog="slicedgw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="one discrepancy between two cloud files, JSON report")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--metric", choices=METRICS, default="sgw")
    p.add_argument("--subsample", action="store_true",
                   help="subsample both clouds to the smaller size")
    p.add_argument("--n", type=int, default=None, help="subsample both clouds to this size")
    p.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=False,
                   help="center and scale each cloud by its RMS norm (default off)")
    p.add_argument("--per-direction", action="store_true",
                   help="include per-direction costs (sgw and sw only)")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock elapsed_ms (makes output run-dependent)")
    _add_common(p)
    _add_opt(p)

    p = sub.add_parser("spiral", help="SGW and RISGW against rotation angle on spirals, CSV")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--angles", type=_float_list, default=None,
                   help="comma-separated radians, 'pi' suffix allowed (default 0, pi/8, ..., pi)")
    p.add_argument("--trials", type=int, default=10)
    _add_common(p, L=20)
    _add_opt(p)

    p = sub.add_parser("bench", help="runtime of sgw against n, CSV")
    p.add_argument("--sizes", type=_int_list,
                   default=[2**k for k in range(14, 21)], help="comma-separated n values")
    p.add_argument("--repeats", type=int, default=1, help="keep the fastest of this many runs")
    p.add_argument("--jobs", type=int, default=1, help="threads for the direction loop")
    _add_common(p)

    p = sub.add_parser("pairwise", help="distance matrix over a directory of clouds, CSV")
    p.add_argument("dir")
    p.add_argument("--metric", choices=METRICS, default="sgw")
    p.add_argument("--n", type=int, default=None, help="common subsample size (default smallest)")
    p.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=True,
                   help="center and scale each cloud by its RMS norm (default on)")
    p.add_argument("--mds", action="store_true", help="also emit a 2D classical MDS embedding")
    p.add_argument("--mds-output", default=None,
                   help="path for the MDS CSV (default: appended after the matrix)")
    _add_common(p)
    _add_opt(p)
    return parser


def _load_pair(args):
    X = read_cloud(args.source)
    Y = read_cloud(args.target)
    if args.n is not None or args.subsample:
        n = args.n if args.n is not None else min(len(X), len(Y))
        if n > min(len(X), len(Y)):
            raise ContractError(f"--n {n} exceeds the smaller cloud ({min(len(X), len(Y))} points)")
        X = subsample(X, n, [args.seed, 0])
        Y = subsample(Y, n, [args.seed, 1])
    if len(X) != len(Y):
        raise ContractError(
            f"clouds have {len(X)} and {len(Y)} points; pass --subsample or --n"
        )
    if X.shape[1] > Y.shape[1]:
        raise ContractError(
            f"source dimension {X.shape[1]} exceeds target dimension {Y.shape[1]}"
        )
    if args.normalize:
        X, Y = normalize_cloud(X), normalize_cloud(Y)
    return X, Y


def cmd_compute(args, out):
    X, Y = _load_pair(args)
    dirs = sample_directions(args.L, Y.shape[1], args.seed)
    t0 = time.perf_counter()
    value, trace = compute_metric(args.metric, X, Y, dirs, _cfg(args))
    elapsed = (time.perf_counter() - t0) * 1e3
    report = {
        "command": "compute",
        "metric": args.metric,
        "source": args.source,
        "target": args.target,
        "seed": args.seed,
        "L": args.L,
        "n": int(len(X)),
        "p": int(X.shape[1]),
        "q": int(Y.shape[1]),
        "value": float(value),
    }
    if args.timing:
        report["elapsed_ms"] = elapsed
    if trace is not None:
        report["iters"] = trace.iters
        report["converged"] = bool(trace.converged)
        report["objective_per_iter"] = [float(v) for v in trace.objective_per_iter]
    if args.per_direction and args.metric in ("sgw", "sw"):
        Xl, Yl, _, _ = prepare(X, Y, dirs=dirs)
        costs = sliced_costs(Xl, Yl, dirs.directions, "gw" if args.metric == "sgw" else "w")
        report["per_direction"] = [float(c) for c in costs]
    out.write(json.dumps(report, indent=2) + "\n")


def cmd_spiral(args, out):
    angles = args.angles if args.angles is not None else default_angles()
    angles, values = spiral_study(args.n, args.L, angles, args.seed, args.trials, _cfg(args))
    header = ["angle", "mean_sgw", "mean_risgw", "sgw_p20", "sgw_p80", "risgw_p20", "risgw_p80"]
    write_csv(header, spiral_rows(angles, values), out)


def cmd_bench(args, out):
    rows = bench(args.sizes, args.L, args.seed, args.repeats, args.jobs)
    write_csv(["n", "milliseconds", "value"], rows, out)


def cmd_pairwise(args, out):
    if not os.path.isdir(args.dir):
        raise OSError(f"{args.dir}: not a directory")
    paths = list_cloud_files(args.dir)
    if len(paths) < 2:
        raise ContractError(f"{args.dir}: need at least 2 .csv/.off files, found {len(paths)}")
    clouds = [read_cloud(p) for p in paths]
    n = args.n
    if n is not None and n > min(len(c) for c in clouds):
        raise ContractError(f"--n {n} exceeds the smallest cloud")
    D = pairwise_matrix(clouds, args.metric, args.L, args.seed, n, args.normalize, _cfg(args))
    names = [os.path.basename(p) for p in paths]
    write_csv(["name"] + names, [[nm] + list(row) for nm, row in zip(names, D)], out)
    if args.mds:
        coords = classical_mds(D, 2)
        rows = [[nm, x, y] for nm, (x, y) in zip(names, coords)]
        if args.mds_output:
            with open(args.mds_output, "w") as f:
                write_csv(["name", "x", "y"], rows, f)
        else:
            out.write("\n")
            write_csv(["name", "x", "y"], rows, out)


COMMANDS = {
    "compute": cmd_compute,
    "spiral": cmd_spiral,
    "bench": cmd_bench,
    "pairwise": cmd_pairwise,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.output:
            with open(args.output, "w") as out:
                COMMANDS[args.command](args, out)
        else:
            COMMANDS[args.command](args, sys.stdout)
    except (OSError, CloudFormatError) as e:
        print(f"slicedgw: error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"slicedgw: error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
