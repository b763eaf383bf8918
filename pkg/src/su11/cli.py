"""``su11`` command line: verification suites, single maps, spectra and flow tables.

Exit codes: 0 success, 1 a suite failed or the input is outside the map's
domain, 2 usage error.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from .errors import DomainError
from .gwflow import FlowConfig, gw_flow, verify_gw_batch
from .maps import adm_spectrum_an, exp_q, fr_map, log_q, sym
from .spaces import ANPoint, HypCoords, QPoint, QStarPoint, rect_of_hyp
from .verify import SUITE_NAMES, VerificationReport, run_all, run_verify


# -- JSON with 17 significant digits ---------------------------------------

def _num(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = "%.17g" % x
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _dump(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def report_to_json(report: VerificationReport) -> str:
    return _dump(report.to_dict())


def report_from_json(text: str) -> VerificationReport:
    return VerificationReport.from_dict(json.loads(text))


# -- argument parsing --------------------------------------------------------

def _triple(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        vals = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return vals


def _float_list(text: str):
    try:
        vals = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _positive_tol(text: str) -> float:
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be non-negative, got {text}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="su11", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--samples", type=_nonneg_int, default=None,
                   help="sample count (default: per-suite)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_positive_tol, default=None,
                   help="primary tolerance (default: per-suite)")
    p.add_argument("--json", metavar="PATH", help="also write the report(s) to PATH")

    p = sub.add_parser("map", help="apply one map to a point")
    p.add_argument("--which", required=True, choices=("sym", "exp", "log", "fr", "gw"))
    p.add_argument("--point", required=True, type=_triple,
                   help="source coordinates: sym takes Z,X,Y; log takes A,B,C; others X,Y,Z")
    p.add_argument("--steps", type=int, default=FlowConfig.steps, help="RK4 steps for gw")

    p = sub.add_parser("spectrum", help="admissible spectrum of an AN element")
    p.add_argument("--point", required=True, type=_triple, help="Z,X,Y")

    p = sub.add_parser("flow", help="tabulate the Ginzburg-Weinstein map on a grid")
    p.add_argument("--lambdas", required=True, type=_float_list)
    p.add_argument("--s", required=True, type=_float_list)
    p.add_argument("--out", required=True)
    p.add_argument("--steps", type=int, default=FlowConfig.steps)
    return parser


# -- commands ----------------------------------------------------------------

def _fmt(vals) -> str:
    return " ".join(_num(float(v)) for v in vals)


def cmd_verify(args) -> int:
    if args.suite == "all":
        reports = run_all(args.samples, args.seed, args.tol)
    else:
        reports = [run_verify(args.suite, args.samples, args.seed, args.tol)]
    lines = [report_to_json(r) for r in reports]
    for line in lines:
        print(line)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.suite}: {status} max_defect={r.max_defect:.3g} tol={r.tolerance:.3g} "
              f"samples={r.samples} {r.wall_time_ms} ms", file=sys.stderr)
        for c in r.checks:
            if not c.passed:
                print(f"  {c.name}: {c.max_defect:.3g} > {c.tolerance:.3g} at {c.worst_point}",
                      file=sys.stderr)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_map(args) -> int:
    a, b, c = args.point
    if args.which == "sym":
        out = sym(ANPoint(a, b, c)).as_array()
    elif args.which == "exp":
        out = exp_q(QStarPoint(a, b, c)).as_array()
    elif args.which == "log":
        out = log_q(QPoint(a, b, c)).as_array()
    elif args.which == "fr":
        out = fr_map(QStarPoint(a, b, c)).as_array()
    else:
        p = QStarPoint(a, b, c)
        img = gw_flow(p, FlowConfig(steps=args.steps))
        print(_fmt(img.as_array()))
        r = math.hypot(img.x, img.y)
        lam_after = math.sqrt(max((img.z - r) * (img.z + r), 0.0))
        print(f"lambda {_num(p.lam)} -> {_num(lam_after)}")
        return 0
    print(_fmt(out))
    return 0


def cmd_spectrum(args) -> int:
    p = ANPoint(*args.point)
    try:
        gamma = adm_spectrum_an(p)
    except DomainError:
        print(f"not admissible: z = {_num(p.z)}, Delta = {_num(p.delta)}", file=sys.stderr)
        return 1
    print(_num(gamma))
    return 0


def cmd_flow(args) -> int:
    pts = []
    for lam in args.lambdas:
        for s in args.s:
            if not (lam > 0 and s >= 0):
                raise DomainError(f"grid needs lambda > 0 and s >= 0, got ({lam}, {s})")
            pts.append((lam, rect_of_hyp(HypCoords(lam, 0.0, s, s == 0)).as_array()))
    try:
        fh = open(args.out, "w", newline="")
    except OSError as exc:
        print(f"cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return 1
    P = np.array([q for _, q in pts])
    defects, images = verify_gw_batch(P, FlowConfig(steps=args.steps))
    with fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "z", "gw_x", "gw_y", "gw_z", "lambda", "defect"])
        for (lam, q), img, d in zip(pts, images, defects):
            w.writerow([_num(v) for v in (*q, *img, lam, d)])
    print(f"wrote {len(pts)} rows to {args.out}", file=sys.stderr)
    return 0


_COMMANDS = {"verify": cmd_verify, "map": cmd_map, "spectrum": cmd_spectrum, "flow": cmd_flow}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
