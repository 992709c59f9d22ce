"""Batch command line: analyze tables, emit canned datasets, render heatmaps.

Standard output carries only the machine-readable payload; diagnostics go to
standard error.  Exit codes: 0 ok, 2 input/usage error, 3 all cells infeasible.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .data_model import (
    DATASET_KINDS,
    SyntheticSpec,
    TableError,
    UnknownKindError,
    generate_synthetic,
    parse_table,
    serialize_table,
)
from .grid import AllInfeasibleError, GridConfig, result_to_dict, run_grid

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modalfit",
        description="Robust piecewise-linear fits over a hyperparameter grid.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run the grid analysis on a table")
    analyze.add_argument("input", nargs="?", default=None,
                         help="table file, or - for standard input")
    analyze.add_argument("--dataset", metavar="KIND",
                         help="analyze a canned dataset instead of a file")
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument("--scale-steps", type=_float_list, default=None)
    analyze.add_argument("--precision-steps", type=_int_list, default=None)
    analyze.add_argument("--parsimony-steps", type=_float_list, default=None)
    analyze.add_argument("--axes", type=_int_list, default=None)
    analyze.add_argument("--subset-size", type=int, default=None)
    analyze.add_argument("--budget", type=int, default=None)
    analyze.add_argument("--threads", type=int, default=1)
    analyze.add_argument("--out", metavar="PATH", default=None,
                         help="write results JSON here instead of stdout")
    analyze.add_argument("--affinity-out", metavar="PATH", default=None,
                         help="write the best cell's affinity matrix as JSON")

    dataset = sub.add_parser("dataset", help="print a canned dataset as table text")
    dataset.add_argument("kind")
    dataset.add_argument("--seed", type=int, default=0)
    dataset.add_argument("--size", type=int, default=None)

    heatmap = sub.add_parser("heatmap", help="render one heatmap pane as text")
    heatmap.add_argument("results", help="path to analyze results JSON")
    heatmap.add_argument("--axis", type=int, default=1)
    heatmap.add_argument("--parsimony", type=float, default=0.0)
    return parser


def _grid_config(args) -> GridConfig:
    kwargs = {}
    if args.scale_steps is not None:
        kwargs["scale_steps"] = args.scale_steps
    if args.precision_steps is not None:
        kwargs["precision_steps"] = args.precision_steps
    if args.parsimony_steps is not None:
        kwargs["parsimony_steps"] = args.parsimony_steps
    if args.axes is not None:
        kwargs["axes"] = args.axes
    if args.subset_size is not None:
        kwargs["subset_size"] = args.subset_size
    if args.budget is not None:
        kwargs["subset_budget"] = args.budget
    kwargs["rng_seed"] = args.seed
    return GridConfig(**kwargs)


def cmd_analyze(args) -> int:
    if args.dataset is not None:
        try:
            table = generate_synthetic(SyntheticSpec(args.dataset, seed=args.seed))
        except UnknownKindError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_INPUT
    else:
        if args.input is None:
            print("error: give an input file or --dataset KIND", file=sys.stderr)
            return EXIT_INPUT
        try:
            text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        except OSError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_INPUT
        try:
            table = parse_table(text)
        except TableError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_INPUT
    try:
        cfg = _grid_config(args)
        result = run_grid(table, cfg, threads=max(1, args.threads))
    except AllInfeasibleError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (TableError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    payload = json.dumps(result_to_dict(result), indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    if args.affinity_out:
        best = result.cells[result.best]
        matrix = [] if best.affinity is None else best.affinity.tolist()
        with open(args.affinity_out, "w") as fh:
            json.dump(matrix, fh)
            fh.write("\n")
    return EXIT_OK


def cmd_dataset(args) -> int:
    try:
        table = generate_synthetic(
            SyntheticSpec(args.kind, seed=args.seed, size_override=args.size)
        )
    except UnknownKindError as err:
        print(f"error: {err}", file=sys.stderr)
        print("known kinds: " + ", ".join(sorted(DATASET_KINDS)), file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(serialize_table(table))
    return EXIT_OK


def format_heatmap(payload: dict, axis: int, parsimony: float) -> str:
    """Text grid of Q (4 significant digits), best cell replaced by XXX."""
    pane = None
    for candidate in payload.get("heatmaps", []):
        if candidate["axis"] == axis and candidate["parsimony"] == parsimony:
            pane = candidate
            break
    if pane is None:
        raise KeyError(f"no heatmap pane for axis={axis}, parsimony={parsimony}")
    scales = payload["config"]["scaleSteps"]
    precisions = payload["config"]["precisionSteps"]
    best = payload["best"]
    best_here = best["axis"] == axis and best["parsimony"] == parsimony

    def fmt(value, scale, precision) -> str:
        if best_here and best["scale"] == scale and best["precision"] == precision:
            return "XXX"
        if value == "inf" or (isinstance(value, float) and math.isinf(value)):
            return "inf"
        return f"{float(value):.4g}"

    width = 10
    lines = ["scale\\prec".ljust(width) + "".join(f"{b:>{width}}" for b in precisions)]
    for i, scale in enumerate(scales):
        cells = [
            f"{fmt(pane['values'][i][j], scale, precision):>{width}}"
            for j, precision in enumerate(precisions)
        ]
        lines.append(f"{scale:<{width}g}" + "".join(cells))
    return "\n".join(lines)


def cmd_heatmap(args) -> int:
    try:
        with open(args.results) as fh:
            payload = json.load(fh)
        text = format_heatmap(payload, args.axis, args.parsimony)
    except (OSError, json.JSONDecodeError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    print(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return cmd_analyze(args)
    if args.command == "dataset":
        return cmd_dataset(args)
    return cmd_heatmap(args)


if __name__ == "__main__":
    sys.exit(main())
