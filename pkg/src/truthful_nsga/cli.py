"""Command line entry point: ``truthful-nsga {run,preset,list-presets}``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import yaml

from .algorithms import ALGORITHMS
from .benchmarks import KINDS, BenchmarkSpec, pareto_front_size
from .core import ConfigError
from .experiments import PRESETS, format_csv, get_preset, run_preset, run_task, single_run_tasks, with_overrides
from .metrics import STATISTICS, aggregate
from .variation import VariationConfig

EXIT_USAGE = 2


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="YAML or JSON file with flag values; flags win")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--runs", type=int, help="independent runs per cell")
    p.add_argument("--budget", type=int, help="evaluation budget per run")
    p.add_argument("--out", type=Path, help="CSV output path (default: stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--aggregate", action="store_true", help="emit median/q1/q3 rows instead of raw runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="truthful-nsga", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="runs of one algorithm on one benchmark")
    r.add_argument("--algo", choices=ALGORITHMS, default="nsga2-t")
    r.add_argument("--benchmark", choices=KINDS, default="omm")
    r.add_argument("--n", type=int, default=20)
    r.add_argument("--m", type=int, default=2)
    r.add_argument("--k", type=int)
    r.add_argument("--pop-size", type=int, help="population size N (default: Pareto front size)")
    r.add_argument("--selection", choices=("fair", "random"), default="random")
    r.add_argument("--mutation", choices=("one-bit", "bitwise"), default="bitwise")
    r.add_argument("--crossover-rate", type=float, default=0.0)
    r.add_argument("--trace-mei", action="store_true", help="per-generation MEI rows (omm only)")
    _add_common(r)

    p = sub.add_parser("preset", help="run a predefined experiment battery")
    p.add_argument("name")
    _add_common(p)

    sub.add_parser("list-presets", help="show the available presets")
    parser.set_defaults(_commands={"run": r, "preset": p})
    return parser


def _load_config(path: Path) -> dict:
    try:
        data = yaml.safe_load(path.read_text()) or {}
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a mapping")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def _parse(parser: argparse.ArgumentParser, argv) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if getattr(args, "config", None) is None:
        return args
    values = _load_config(args.config)
    sub = args._commands[args.command]
    unknown = sorted(k for k in values if not hasattr(args, k) or k in ("config", "name"))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    sub.set_defaults(**values)
    args = parser.parse_args(argv)
    if isinstance(args.out, str):
        args.out = Path(args.out)
    return args


def _emit(rows, args) -> None:
    if args.aggregate:
        rows = [r for stat in STATISTICS for r in aggregate(rows, stat)]
    text = format_csv(rows)
    if args.out is None:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the exit-time flush
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_run(args) -> None:
    spec = BenchmarkSpec(args.benchmark, args.n, args.m, args.k)
    N = args.pop_size or pareto_front_size(spec)
    variation = VariationConfig(args.selection, args.mutation, args.crossover_rate)
    budget = args.budget or 1000 * max(N, 1) * spec.n
    tasks = single_run_tasks(args.algo, spec, N, variation, args.seed, args.runs or 1, budget, args.trace_mei)
    rows = [row for t in tasks for row in run_task(t)]
    _emit(rows, args)


def _cmd_preset(args) -> None:
    cfg = with_overrides(get_preset(args.name), runs=args.runs, budget=args.budget, master_seed=args.seed)
    _emit(run_preset(cfg, jobs=args.jobs), args)


def _cmd_list() -> None:
    for name, cfg in PRESETS.items():
        print(f"{name:12s} {cfg.description}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _parse(parser, argv)
        if args.command == "run":
            _cmd_run(args)
        elif args.command == "preset":
            _cmd_preset(args)
        else:
            _cmd_list()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
