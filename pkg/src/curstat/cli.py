"""Command-line front end.

Three subcommands: ``estimate`` fits one estimator to an observation
file and writes the fit on a uniform grid; ``simulate`` draws a sample
from a built-in model and estimates it; ``bench`` runs the Monte Carlo
benchmark grid and writes the MSE report.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
failure. All numbers are printed with 17 significant digits so outputs
round-trip exactly.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bases import DYADIC, HAAR, POLY, TRIG, EmptyCollectionError
from .data import SampleFormatError, read_sample, write_sample
from .simulate import (
    METHODS,
    MODEL_IDS,
    BenchConfig,
    SimModel,
    estimate_sample,
    generate,
    monte_carlo,
    replication_rng,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _method_list(text: str) -> list[str]:
    methods = [part.strip() for part in text.split(",") if part.strip()]
    for m in methods:
        if m not in METHODS:
            raise argparse.ArgumentTypeError(f"unknown method {m!r}")
    return methods


def _add_estimator_flags(parser):
    parser.add_argument(
        "--method", choices=METHODS, default="regression", help="estimation method"
    )
    parser.add_argument(
        "--family",
        choices=(TRIG, POLY, DYADIC, HAAR),
        default=DYADIC,
        help="basis family for quotient/regression",
    )
    parser.add_argument("--kappa", type=float, default=4.0, help="density penalty constant")
    parser.add_argument("--kappa0", type=float, default=4.0, help="regression penalty constant")
    parser.add_argument("--rmax", type=int, default=9, help="largest polynomial degree")
    parser.add_argument(
        "--clamp", action="store_true", help="truncate regression output to [0, 1]"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="curstat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate a cdf from an observation file")
    est.add_argument("input", help="observation file, one 'u,delta' pair per line")
    _add_estimator_flags(est)
    est.add_argument("--grid", type=int, default=512, help="evaluation grid size")
    est.add_argument("--out", default=None, help="output file (default stdout)")

    sim = sub.add_parser("simulate", help="draw a sample from a built-in model")
    sim.add_argument("--model", type=int, choices=MODEL_IDS, required=True)
    sim.add_argument("--n", type=int, required=True, help="sample size")
    sim.add_argument("--seed", type=int, default=0)
    _add_estimator_flags(sim)
    sim.add_argument("--grid", type=int, default=512)
    sim.add_argument("--out", default="simulate", help="output file prefix")

    bench = sub.add_parser("bench", help="run the Monte Carlo benchmark")
    bench.add_argument(
        "--model", type=_int_list, default=list(MODEL_IDS), help="comma-separated model ids"
    )
    bench.add_argument(
        "--n", type=_int_list, default=[60, 200, 500, 1000], help="comma-separated sizes"
    )
    bench.add_argument(
        "--method", type=_method_list, default=list(METHODS), help="comma-separated methods"
    )
    bench.add_argument(
        "--reps",
        type=int,
        default=None,
        help="replications per cell (default: 500 up to n=200, 200 beyond)",
    )
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--jobs", type=int, default=1, help="worker processes")
    bench.add_argument("--kappa", type=float, default=4.0)
    bench.add_argument("--kappa0", type=float, default=4.0)
    bench.add_argument("--rmax", type=int, default=9)
    bench.add_argument("--clamp", action="store_true")
    bench.add_argument("--family", choices=(TRIG, POLY, DYADIC, HAAR), default=DYADIC)
    bench.add_argument("--bins", type=int, default=None, help="fixed histogram bin count")
    bench.add_argument("--out", default="bench", help="output file prefix")

    return parser


def _config_from_args(args) -> BenchConfig:
    return BenchConfig(
        kappa=args.kappa,
        kappa0=args.kappa0,
        max_degree=args.rmax,
        practical_correction=True,
        clamp_regression=args.clamp,
        birge_bins=getattr(args, "bins", None),
        family_tag=args.family,
    )


def _format_value(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_estimate_document(fh, estimate, n: int, grid: int) -> None:
    fh.write(f"# method: {estimate.method}\n")
    fh.write(f"# n: {n}\n")
    for key in sorted(estimate.metadata):
        fh.write(f"# {key}: {_format_value(estimate.metadata[key])}\n")
    fh.write("x,value\n")
    xs = np.linspace(0.0, 1.0, grid)
    values = np.asarray(estimate(xs), dtype=float)
    for x, v in zip(xs, values):
        fh.write(f"{x:.17g},{v:.17g}\n")


def _cmd_estimate(args) -> int:
    sample = read_sample(args.input)
    estimate = estimate_sample(args.method, sample, _config_from_args(args))
    if args.out is None:
        _write_estimate_document(sys.stdout, estimate, sample.n, args.grid)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_estimate_document(fh, estimate, sample.n, args.grid)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    model = SimModel(args.model)
    sample = generate(model, args.n, replication_rng(args.seed, model.id, args.n, 0))
    write_sample(sample, f"{args.out}.sample.csv")
    estimate = estimate_sample(args.method, sample, _config_from_args(args))
    with open(f"{args.out}.estimate.csv", "w", encoding="utf-8") as fh:
        _write_estimate_document(fh, estimate, sample.n, args.grid)
    return EXIT_OK


def _cmd_bench(args) -> int:
    report = monte_carlo(
        models=args.model,
        methods=tuple(args.method),
        n_list=tuple(args.n),
        reps=args.reps,
        seed=args.seed,
        n_jobs=args.jobs,
        config=_config_from_args(args),
    )
    with open(f"{args.out}.csv", "w", encoding="utf-8") as fh:
        fh.write(report.to_delimited())
    table = report.to_table()
    with open(f"{args.out}.table.txt", "w", encoding="utf-8") as fh:
        fh.write(table)
    sys.stdout.write(table)
    return EXIT_OK


_COMMANDS = {"estimate": _cmd_estimate, "simulate": _cmd_simulate, "bench": _cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SampleFormatError as exc:
        print(f"curstat: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"curstat: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (EmptyCollectionError, ValueError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"curstat: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
