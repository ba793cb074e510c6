"""Experiment presets, reproducible seeding and CSV rows.

Every row follows ``CSV_HEADER``. Cover-time presets emit one
``evaluations_to_cover`` row per run (empty value if the budget ran out).
Approximation presets emit one ``extremes_generation`` row per run and
``mei`` rows for the generations inside each window, counted relative to
the first generation whose population holds both 0^n and 1^n.
"""

from __future__ import annotations

import csv
import io
import math
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

import numpy as np

from .algorithms import AlgorithmConfig, run
from .benchmarks import BenchmarkSpec, pareto_front_size
from .core import ConfigError
from .metrics import mei
from .variation import VariationConfig

CSV_HEADER = ("preset", "algo", "benchmark", "n", "m", "k", "N", "run", "seed", "metric", "generation", "value")


def derive_seed(master: int, *parts) -> int:
    """64-bit run seed from the master seed and a cell/run identity.

    String parts are reduced with CRC-32, then everything is mixed by
    numpy's SeedSequence, so any single cell can be rerun in isolation.
    """
    words = [int(master) & 0xFFFFFFFFFFFFFFFF]
    for p in parts:
        words.append(zlib.crc32(p.encode()) if isinstance(p, str) else int(p))
    return int(np.random.SeedSequence(words).generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class Cell:
    algo: str
    pop_factor: Optional[float] = 1.0  # N = ceil(factor * front size); None for gsemo

    def population_size(self, spec: BenchmarkSpec) -> Optional[int]:
        if self.pop_factor is None:
            return None
        return max(2, math.ceil(self.pop_factor * pareto_front_size(spec)))


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    benchmark: str
    ns: tuple[int, ...]
    cells: tuple[Cell, ...]
    m: int = 2
    k: Optional[int] = None
    runs: int = 20
    master_seed: int = 0
    budget: int = 10**7
    kind: str = "cover"  # "cover" or "mei"
    windows: tuple[tuple[int, int], ...] = ()
    max_generations: int = 200_000
    variation: VariationConfig = field(default_factory=VariationConfig)
    description: str = ""

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigError("run count must be at least 1")
        if self.kind not in ("cover", "mei"):
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.kind == "mei":
            if not self.windows:
                raise ConfigError("an MEI experiment needs measurement windows")
            if self.benchmark != "omm":
                raise ConfigError("MEI is defined for bi-objective OneMinMax only")
        prev = 0
        for lo, hi in self.windows:
            if not prev < lo <= hi:
                raise ConfigError(f"windows must be positive, disjoint and increasing: {self.windows}")
            prev = hi


_FIG3_ALGOS = ("nsga2", "nsga2-seq", "nsga2-t", "nsga2-t-seq")
_TRACE_WINDOWS = ((1, 100), (3001, 3100))

PRESETS: dict[str, ExperimentConfig] = {
    p.name: p
    for p in (
        ExperimentConfig(
            "fig1",
            "m-omm",
            ns=(4, 8, 12, 16, 20),
            m=4,
            cells=tuple(Cell(a, f) for a in ("nsga2-t", "nsga2-t-seq") for f in (1, 2)) + (Cell("gsemo", None),),
            budget=5 * 10**7,
            description="4-objective OneMinMax, evaluations to cover the front, N in {M, 2M}",
        ),
        ExperimentConfig(
            "fig1-small",
            "m-omm",
            ns=(4, 8, 12),
            m=4,
            cells=tuple(Cell(a, f) for a in ("nsga2-t", "nsga2-t-seq") for f in (1, 2)) + (Cell("gsemo", None),),
            budget=5 * 10**6,
            description="desk-scale fig1",
        ),
        ExperimentConfig(
            "fig2",
            "omm",
            ns=(20, 40, 60, 80, 100),
            cells=(
                Cell("nsga2", 1),
                Cell("nsga2", 1.5),
                Cell("nsga2-t", 1),
                Cell("nsga2-t", 1.5),
                Cell("gsemo", None),
            ),
            budget=5 * 10**6,
            description="bi-objective OneMinMax; classic NSGA-II at N=M exhibits failures",
        ),
        ExperimentConfig(
            "fig2-small",
            "omm",
            ns=(10, 20, 30),
            cells=(Cell("nsga2", 1.5), Cell("nsga2-t", 1), Cell("nsga2-t", 1.5), Cell("gsemo", None)),
            budget=10**6,
            description="desk-scale fig2",
        ),
        ExperimentConfig(
            "fig3",
            "omm",
            ns=(601,),
            cells=tuple(Cell(a, f) for f in (1 / 2, 1 / 4, 1 / 8) for a in _FIG3_ALGOS),
            kind="mei",
            windows=_TRACE_WINDOWS,
            description="MEI traces for n=601, N in {301, 151, 76}",
        ),
        ExperimentConfig(
            "fig3-small",
            "omm",
            ns=(61,),
            cells=(Cell("nsga2-seq", 1 / 4), Cell("nsga2-t-seq", 1 / 4)),
            runs=5,
            kind="mei",
            windows=_TRACE_WINDOWS,
            description="desk-scale fig3: n=61, N=16",
        ),
    )
}


def get_preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None


@dataclass(frozen=True)
class _Task:
    preset: str
    algo: str
    spec: BenchmarkSpec
    N: Optional[int]
    run_index: int
    seed: int
    budget: int
    variation: VariationConfig
    kind: str
    windows: tuple[tuple[int, int], ...]
    max_generations: int
    trace_mei: bool = False


def _tasks(cfg: ExperimentConfig) -> list[_Task]:
    tasks = []
    for n in cfg.ns:
        spec = BenchmarkSpec(cfg.benchmark, n, cfg.m, cfg.k)
        for cell in cfg.cells:
            N = cell.population_size(spec)
            for r in range(cfg.runs):
                seed = derive_seed(cfg.master_seed, cfg.name, cell.algo, N or 0, n, r)
                tasks.append(
                    _Task(cfg.name, cell.algo, spec, N, r, seed, cfg.budget, cfg.variation,
                          cfg.kind, cfg.windows, cfg.max_generations)
                )
    return tasks


def _row(task: _Task, metric: str, generation, value) -> dict:
    spec = task.spec
    return {
        "preset": task.preset,
        "algo": task.algo,
        "benchmark": spec.kind,
        "n": spec.n,
        "m": spec.m,
        "k": "" if spec.k is None else spec.k,
        "N": "" if task.N is None else task.N,
        "run": task.run_index,
        "seed": task.seed,
        "metric": metric,
        "generation": "" if generation is None else generation,
        "value": "" if value is None else value,
    }


def _algorithm_config(task: _Task, budget: int, stop: str) -> AlgorithmConfig:
    return AlgorithmConfig(task.algo, task.N or 1, task.variation, task.seed, budget, stop)


def run_task(task: _Task) -> list[dict]:
    if task.kind == "cover":
        cfg = _algorithm_config(task, task.budget, "front_covered")
        result = run(cfg, task.spec, trace=task.trace_mei)
        rows = [_row(task, "evaluations_to_cover", None, result.covered_at)]
        if task.trace_mei and result.trace:
            rows += [_row(task, "mei", t.generation, t.mei) for t in result.trace if t.mei is not None]
        return rows

    n = task.spec.n
    last = task.windows[-1][1]
    wanted = {g for lo, hi in task.windows for g in range(lo, hi + 1)}
    anchor = None
    trace: list[tuple[int, int]] = []

    def observe(gen, combined, pop):
        nonlocal anchor
        f1 = pop.objectives[:, 0]
        if anchor is None and (f1 == 0).any() and (f1 == n).any():
            anchor = gen
        if anchor is not None:
            rel = gen - anchor
            if rel in wanted:
                trace.append((rel, mei(pop, n)))
            return rel >= last
        return gen >= task.max_generations

    N = task.N or 1
    cfg = _algorithm_config(task, N * (task.max_generations + last + 1), "budget_only")
    run(cfg, task.spec, observer=observe)
    rows = [_row(task, "extremes_generation", None, anchor)]
    rows += [_row(task, "mei", rel, value) for rel, value in trace]
    return rows


def run_preset(cfg: ExperimentConfig, jobs: int = 1) -> list[dict]:
    """Execute every run of a preset; row order follows the task order."""
    tasks = _tasks(cfg)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_task, tasks))
    else:
        chunks = [run_task(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def single_run_tasks(
    algo: str,
    spec: BenchmarkSpec,
    N: Optional[int],
    variation: VariationConfig,
    seed: int,
    runs: int,
    budget: int,
    trace_mei: bool = False,
) -> list[_Task]:
    if trace_mei and spec.kind != "omm":
        raise ConfigError("--trace-mei needs the omm benchmark")
    pop = None if algo == "gsemo" else N
    return [
        _Task("run", algo, spec, pop, r, derive_seed(seed, "run", algo, pop or 0, spec.n, r), budget,
              variation, "cover", (), 0, trace_mei)
        for r in range(runs)
    ]


def with_overrides(cfg: ExperimentConfig, **changes) -> ExperimentConfig:
    return replace(cfg, **{k: v for k, v in changes.items() if v is not None})


def format_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
