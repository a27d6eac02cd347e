"""Batch command line: solve levels, sweep edit gradients, compute metrics,
aggregate session logs, run rank tests, and serve the editor API.

Exit codes for ``solve``: 0 solved, 1 unsolvable, 2 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys

from .gradient import GradientStatus, gradient
from .metrics import solution_density, summarize_sessions
from .model import LevelError, TileKind, parse_level
from .sessions import parse_log
from .solver import SearchBudget, SolveStatus, solve
from .stats import StatsError, mann_whitney_u, spearman_rho, wilcoxon_signed_rank

_GRID_GLYPHS = {
    GradientStatus.UNCHANGED: "·",
    GradientStatus.UNSOLVABLE: "X",
    GradientStatus.BUDGET: "B",
    GradientStatus.NOT_EDITABLE: "@",
    GradientStatus.MAKES_SOLVABLE: "?",
}


def _read_level(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_level(fh.read())


def _cmd_solve(args) -> int:
    level = _read_level(args.level)
    result = solve(level, SearchBudget(args.budget))
    if result.status is SolveStatus.SOLVED:
        print(f"Solved {result.length} {result.action_letters}".rstrip())
        return 0
    if result.status is SolveStatus.UNSOLVABLE:
        print(f"Unsolvable {result.expansions}")
        return 1
    print(f"BudgetExhausted {result.expansions}")
    return 2


def _cmd_gradient(args) -> int:
    level = _read_level(args.level)
    selected = TileKind[args.object.upper()]
    gmap = gradient(level, selected, SearchBudget(args.budget))
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["col", "row", "status", "value"])
        for gc in gmap.cells:
            value = gc.delta if gc.status is GradientStatus.DELTA else gc.length
            writer.writerow([gc.cell.col, gc.cell.row, gc.status.value, "" if value is None else value])
        return 0
    tokens = {}
    for gc in gmap.cells:
        if gc.status is GradientStatus.DELTA:
            tokens[gc.cell] = f"{gc.delta:+d}"
        else:
            tokens[gc.cell] = _GRID_GLYPHS[gc.status]
    width = max(len(t) for t in tokens.values())
    for row in range(level.height):
        print(" ".join(tokens[(col, row)].rjust(width) for col in range(level.width)))
    base = gmap.base_result
    readout = base.status.value if not base.solved else f"Solved {base.length}"
    print(f"base: {readout}")
    return 0


def _cmd_density(args) -> int:
    values = []
    for path in args.levels:
        density = solution_density(_read_level(path), SearchBudget(args.budget))
        print(f"{path}\t{'undefined' if density is None else density}")
        if density is not None:
            values.append(density)
    if values:
        print(f"median\t{statistics.median(values)}")
    else:
        print("median\tundefined")
    return 0


def _cmd_stats(args) -> int:
    logs = []
    for path in args.logs:
        with open(path, encoding="utf-8") as fh:
            logs.append(parse_log(fh.read()))
    table = summarize_sessions(logs, SearchBudget(args.budget), by_condition=args.by_condition)
    sys.stdout.write(table.to_csv())
    return 0


def _cmd_correlate(args) -> int:
    with open(args.csv, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or args.x not in reader.fieldnames or args.y not in reader.fieldnames:
            print(f"error: columns {args.x!r} and {args.y!r} must exist in {args.csv}", file=sys.stderr)
            return 2
        rows = list(reader)
    if args.test == "mwu":
        xs = [float(r[args.x]) for r in rows if r[args.x] != ""]
        ys = [float(r[args.y]) for r in rows if r[args.y] != ""]
        result = mann_whitney_u(xs, ys)
    else:
        pairs = [
            (float(r[args.x]), float(r[args.y]))
            for r in rows
            if r[args.x] != "" and r[args.y] != ""
        ]
        if args.test == "spearman":
            result = spearman_rho([p[0] for p in pairs], [p[1] for p in pairs])
        else:
            result = wilcoxon_signed_rank(pairs)
    print(f"{args.test} statistic={result.statistic:.6g} p={result.p_value:.6g} method={result.method}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snakedit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a level file")
    p.add_argument("level")
    p.add_argument("--budget", type=int, default=50_000)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("gradient", help="evaluate every single-tile edit")
    p.add_argument("level")
    p.add_argument("--object", required=True, choices=["sky", "ground", "spike", "fruit", "exit"])
    p.add_argument("--budget", type=int, default=50_000)
    p.add_argument("--format", choices=["csv", "grid"], default="grid")
    p.set_defaults(func=_cmd_gradient)

    p = sub.add_parser("density", help="solution density per level plus median")
    p.add_argument("levels", nargs="+")
    p.add_argument("--budget", type=int, default=50_000)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("stats", help="aggregate session logs into the metrics table")
    p.add_argument("logs", nargs="+")
    p.add_argument("--budget", type=int, default=50_000)
    p.add_argument("--by-condition", action="store_true")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("correlate", help="rank test between two CSV columns")
    p.add_argument("csv")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--test", choices=["spearman", "mwu", "wilcoxon"], default="spearman")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("serve", help="run the editor session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LevelError, StatsError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
