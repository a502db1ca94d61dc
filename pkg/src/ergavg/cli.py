"""
Command-line interface
======================

::

    ergavg average SYSTEM F1 F2 F3 [--stages 1,2,4]
    ergavg bounds SYSTEM F
    ergavg scan GRID --range g0,g1,h0,h1 [--sub x0,x1,y0,y1] [--epsilon E]
    ergavg partition COLORING [--range g0,g1,h0,h1,k0,k1]
    ergavg example P Q R --tau 1,0 --sigma 0,0 --system-output FILE
    ergavg check SYSTEM

Common options: ``--seed``, ``--format csv|json``, ``--exact``,
``--output``.  Exit codes: 0 success, 2 validation failure, 3 a bound or
property that must hold did not.

.. autosummary::

    ~main
    ~run
    ~build_parser
"""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .averages.battery import battery_passed
from .averages.battery import run_battery
from .averages.ergodic import khintchine_bound
from .averages.multiple import average_report
from .averages.multiple import four_term_bound
from .averages.multiple import full_period_sequence
from .averages.multiple import multi_average
from .combinatorics.gridio import read_coloring
from .combinatorics.gridio import read_grid
from .combinatorics.grids import good_pair_set
from .combinatorics.grids import intersection_density_scan
from .combinatorics.grids import syndeticity_estimate
from .combinatorics.grids import window_density
from .combinatorics.parallelepiped import parallelepiped_search
from .combinatorics.parallelepiped import verify_parallelepiped
from .reports.runreport import RunReport
from .reports.runreport import inputs_digest
from .reports.runreport import write_report
from .startup import tolerances
from .systems.factories import skew_product_example
from .systems.systemfile import SystemFile
from .systems.systemfile import load_system
from .systems.systemfile import save_system
from .utils.parallel import worker_count

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3


def _ints(text, count=None):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, not {text!r}") from None
    if count is not None and len(values) != count:
        raise argparse.ArgumentTypeError(f"expected {count} integers, got {len(values)}")
    return values


def _pairs(values):
    return tuple((values[i], values[i + 1]) for i in range(0, len(values), 2))


def build_parser():
    """The argument parser."""
    parser = argparse.ArgumentParser(prog="ergavg", description="Multiple ergodic averages on finite systems.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default: iconfig RANDOM.SEED)")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="report format")
    common.add_argument("--output", type=Path, default=None, help="report file (default: stdout)")
    common.add_argument("--exact", action="store_true", default=None, help="rational arithmetic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("average", parents=[common], help="finite averages against the limit")
    p.add_argument("system", type=Path)
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("f3")
    p.add_argument("--stages", type=_ints, default=None, help="comma-separated stages")

    p = sub.add_parser("bounds", parents=[common], help="recurrence lower bounds")
    p.add_argument("system", type=Path)
    p.add_argument("f")

    p = sub.add_parser("scan", parents=[common], help="four-fold intersection densities on a grid")
    p.add_argument("grid", type=Path)
    p.add_argument("--range", dest="shift_range", type=lambda t: _ints(t, 4), required=True)
    p.add_argument("--sub", type=lambda t: _ints(t, 4), default=None)
    p.add_argument("--epsilon", type=float, default=1e-3)

    p = sub.add_parser("partition", parents=[common], help="monochromatic parallelepiped search")
    p.add_argument("coloring", type=Path)
    p.add_argument("--range", dest="shift_range", type=lambda t: _ints(t, 6), default=None)

    p = sub.add_parser("example", parents=[common], help="write a skew-product system file")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--tau", type=_ints, required=True)
    p.add_argument("--sigma", type=_ints, required=True)
    p.add_argument("--system-output", dest="system_output", type=Path, required=True)

    p = sub.add_parser("check", parents=[common], help="run the property battery")
    p.add_argument("system", type=Path)
    return parser


def _digest(args, *paths):
    options = sorted((k, repr(v)) for k, v in vars(args).items() if k not in ("output", "format"))
    return inputs_digest(*(Path(p).read_bytes() for p in paths), repr(options))


def cmd_average(args, iconfig):
    """Stage table of ``‖A_n − L‖₂`` and the limit."""
    system = load_system(args.system, exact=args.exact).build()
    fs = [system.observable(name) for name in (args.f1, args.f2, args.f3)]
    stages = args.stages or iconfig.get("STAGES", [1, 2, 4, 8, 16])
    arithmetic, _, _ = tolerances(iconfig)
    report = RunReport("average", _digest(args, args.system))
    with report.timed("average"):
        result = average_report(system.pair, *fs, system.phi, system.psi, stages)
    for (n, _, deviation), envelope, bound in zip(result.stages, result.envelope, result.bounds):
        report.table.append({"n": n, "deviation": deviation, "envelope": envelope, "bound": bound})
    report.limits["L"] = result.limit
    seq = full_period_sequence(system.pair, cap=iconfig.get("PERIOD", {}).get("CAP", 1_000_000))
    if seq is not None:
        exact_gap = (multi_average(system.pair, *fs, seq, seq, 1) - result.limit).norm()
        report.verdicts["full_period_deviation"] = exact_gap
        report.verdicts["full_period_exact"] = exact_gap <= arithmetic
    report.verdicts["within_bounds"] = result.within_bounds(arithmetic)
    ok = report.verdicts["within_bounds"] and report.verdicts.get("full_period_exact", True)
    return report, EXIT_OK if ok else EXIT_VIOLATION


def cmd_bounds(args, iconfig):
    """Four-term and Khintchine bounds for one nonnegative observable."""
    system = load_system(args.system, exact=args.exact).build()
    f = system.observable(args.f)
    arithmetic, _, _ = tolerances(iconfig)
    report = RunReport("bounds", _digest(args, args.system))
    with report.timed("bounds"):
        results = {
            "four_term": four_term_bound(system.pair, f, tolerance=arithmetic),
            "khintchine": khintchine_bound(system.pair.T, f, tolerance=arithmetic),
        }
    for name, bound in results.items():
        report.bounds.append({"bound": name, "left": bound.left, "right": bound.right, "holds": bound.holds})
        report.table.append(
            {"bound": name, "left": float(bound.left), "right": float(bound.right), "holds": bound.holds}
        )
    holds = all(b.holds for b in results.values())
    report.verdicts["all_hold"] = holds
    if not holds:
        logger.error("a recurrence lower bound failed: %s", results)
    return report, EXIT_OK if holds else EXIT_VIOLATION


def _default_sub(E, shift_range):
    """Largest box keeping every shift in range inside the window."""
    (o1, e1), (o2, e2) = E.window
    (g0, g1), (h0, h1) = shift_range
    return ((o1 - min(g0, 0), e1 - max(g1 - 1, 0)), (o2 - min(h0, 0), e2 - max(h1 - 1, 0)))


def cmd_scan(args, iconfig):
    """Good shift pairs, their densities and a syndeticity estimate."""
    E = read_grid(args.grid)
    shift_range = _pairs(args.shift_range)
    sub = _pairs(args.sub) if args.sub else _default_sub(E, shift_range)
    report = RunReport("scan", _digest(args, args.grid))
    with report.timed("scan"):
        good = good_pair_set(E, args.epsilon, sub, shift_range, workers=_workers(iconfig))
    (g0, g1), (h0, h1) = shift_range
    for g in range(g0, g1):
        for h in range(h0, h1):
            density = intersection_density_scan(E, (g, h), sub)
            report.table.append({"g": g, "h": h, "density": density, "good": good.contains((g, h))})
    report.verdicts.update(
        {
            "window": E.window,
            "sub": sub,
            "epsilon": args.epsilon,
            "delta": window_density(E, sub),
            "good_pairs": int(good.bits.sum()),
            "syndeticity": syndeticity_estimate(good),
        }
    )
    return report, EXIT_OK


def cmd_partition(args, iconfig):
    """First monochromatic parallelepiped, verified independently."""
    c = read_coloring(args.coloring)
    shift_range = _pairs(args.shift_range) if args.shift_range else None
    report = RunReport("partition", _digest(args, args.coloring))
    with report.timed("search"):
        hit = parallelepiped_search(c, shift_range, workers=_workers(iconfig))
    report.verdicts["found"] = hit is not None
    if hit is not None:
        verified = verify_parallelepiped(c, hit.color, hit.base, hit.shifts)
        report.table.append(
            {"color": hit.color, "base": list(hit.base), "shifts": list(hit.shifts), "verified": verified}
        )
        report.verdicts["verified"] = verified
        if not verified:
            return report, EXIT_VIOLATION
    return report, EXIT_OK


def cmd_example(args, iconfig):
    """Write a skew-product system file and re-validate it."""
    pair = skew_product_example(args.p, args.q, args.r, args.tau, args.sigma, exact=bool(args.exact))
    sf = SystemFile.from_pair(pair)
    save_system(sf, args.system_output)
    reread = load_system(args.system_output)
    reread.build()
    report = RunReport("example", _digest(args, args.system_output))
    report.verdicts.update(
        {"points": pair.space.n, "round_trip": reread == sf, "system_file": str(args.system_output)}
    )
    return report, EXIT_OK if reread == sf else EXIT_VIOLATION


def cmd_check(args, iconfig):
    """The full property battery on one system file."""
    system = load_system(args.system, exact=args.exact).build()
    arithmetic, orthonormal, drop = tolerances(iconfig)
    random_section = iconfig.get("RANDOM", {})
    report = RunReport("check", _digest(args, args.system), seed=args.seed)
    with report.timed("battery"):
        rows = run_battery(
            system.pair,
            np.random.default_rng(args.seed),
            functions=int(random_section.get("CHECK_FUNCTIONS", 25)),
            trials=int(random_section.get("TRIALS", 20)),
            arithmetic=arithmetic,
            orthonormal=orthonormal,
            drop=drop,
            cap=int(iconfig.get("PERIOD", {}).get("CAP", 1_000_000)),
        )
    report.table.extend(row.as_dict() for row in rows)
    passed = battery_passed(rows)
    report.verdicts["passed"] = passed
    if not passed:
        logger.error("property battery failed on %s", args.system)
    return report, EXIT_OK if passed else EXIT_VIOLATION


COMMANDS = {
    "average": cmd_average,
    "bounds": cmd_bounds,
    "scan": cmd_scan,
    "partition": cmd_partition,
    "example": cmd_example,
    "check": cmd_check,
}


def _workers(iconfig):
    section = iconfig.get("WORKERS", {})
    return worker_count(section.get("ENV_VAR", "ERGAVG_WORKERS"), int(section.get("DEFAULT", 1)))


def run(argv, iconfig=None, stream=None):
    """Run one command and return its exit code."""
    iconfig = iconfig or {}
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    reports = iconfig.get("REPORTS", {})
    if args.seed is None:
        args.seed = int(iconfig.get("RANDOM", {}).get("SEED", 0))
    fmt = args.format or reports.get("FORMAT", "json")
    try:
        report, code = COMMANDS[args.command](args, iconfig)
    except (ValueError, OSError) as exinfo:
        print(f"ergavg {args.command}: {exinfo}", file=sys.stderr)
        logger.error("%s failed: %s", args.command, exinfo)
        return EXIT_INVALID
    report.seed = args.seed
    write_report(
        report,
        args.output,
        fmt=fmt,
        include_timings=bool(reports.get("INCLUDE_TIMINGS", False)),
        stream=stream,
    )
    logger.info("%s finished with exit code %d", args.command, code)
    return code


def main():
    """Console entry point."""
    from .startup import init_session

    iconfig = init_session()
    sys.exit(run(sys.argv[1:], iconfig))


if __name__ == "__main__":
    main()
