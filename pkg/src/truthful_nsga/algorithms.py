"""Generation loops: four NSGA-II variants and the GSEMO baseline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .benchmarks import BenchmarkSpec, FrontOracle, coverage, evaluate, random_population
from .core import ConfigError, Population
from .crowding import survival_select
from .metrics import mei
from .variation import VariationConfig, bitwise_mutation, generate_offspring

# algo name -> (crowding distance kind, survival mode)
NSGA2_VARIANTS = {
    "nsga2": ("classic", "standard"),
    "nsga2-seq": ("classic", "sequential"),
    "nsga2-t": ("truthful", "standard"),
    "nsga2-t-seq": ("truthful", "sequential"),
}
ALGORITHMS = (*NSGA2_VARIANTS, "gsemo")
STOP_RULES = ("front_covered", "budget_only")

# observer(generation, combined R_t or None, population P_{t+1}) -> truthy to stop
Observer = Callable[[int, Optional[Population], Population], Optional[bool]]


@dataclass(frozen=True)
class AlgorithmConfig:
    algo: str = "nsga2-t"
    N: int = 1
    variation: VariationConfig = field(default_factory=VariationConfig)
    seed: int = 0
    budget: int = 10**6
    stop: str = "front_covered"

    def __post_init__(self):
        if self.algo not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algo!r}; choose from {', '.join(ALGORITHMS)}")
        if self.stop not in STOP_RULES:
            raise ConfigError(f"stop rule must be one of {STOP_RULES}")
        if self.N < 1:
            raise ConfigError("population size N must be positive")
        if self.budget < self.initial_evaluations:
            raise ConfigError(f"budget {self.budget} does not cover the initial population")

    @property
    def initial_evaluations(self) -> int:
        return 1 if self.algo == "gsemo" else self.N

    @property
    def evaluations_per_generation(self) -> int:
        return 1 if self.algo == "gsemo" else self.N


@dataclass(frozen=True)
class TraceRecord:
    generation: int
    evaluations: int
    covered: int
    mei: Optional[int]
    extremes: bool


@dataclass
class RunResult:
    evaluations_used: int
    generations: int
    covered_at: Optional[int]
    covered_generation: Optional[int]
    final_population: Population
    trace: Optional[list[TraceRecord]] = None

    @property
    def covered(self) -> bool:
        return self.covered_at is not None

    def to_dict(self) -> dict:
        return {
            "evaluations_used": self.evaluations_used,
            "generations": self.generations,
            "covered_at": self.covered_at,
            "covered_generation": self.covered_generation,
            "final_genomes": self.final_population.genomes.tolist(),
            "trace": None if self.trace is None else [vars(t) for t in self.trace],
        }


def nsga2_step(
    parents: Population, cfg: AlgorithmConfig, spec: BenchmarkSpec, rng: np.random.Generator
) -> tuple[Population, Population]:
    """One generation; returns ``(R_t, P_{t+1})``. R_t lists parents first."""
    cd_kind, mode = NSGA2_VARIANTS[cfg.algo]
    offspring = generate_offspring(parents, cfg.variation, spec, rng)
    combined = parents.concat(offspring)
    return combined, survival_select(combined, cfg.N, cd_kind, mode, rng)


def nsga2_generation(
    parents: Population, cfg: AlgorithmConfig, spec: BenchmarkSpec, rng: np.random.Generator
) -> Population:
    return nsga2_step(parents, cfg, spec, rng)[1]


def gsemo_step(archive: Population, spec: BenchmarkSpec, rng: np.random.Generator) -> Population:
    """Mutate a uniform archive member; insert it unless weakly dominated.

    Members the child weakly dominates are dropped, so the archive stays a
    set of pairwise incomparable, distinct objective vectors.
    """
    parent = archive.genomes[rng.integers(len(archive))]
    child = bitwise_mutation(parent, rng)
    fy = evaluate(spec, child)
    f = archive.objectives
    if np.any(np.all(f >= fy, axis=1)):
        return archive
    keep = ~np.all(fy >= f, axis=1)
    return Population(
        np.concatenate([archive.genomes[keep], child[None, :]]),
        np.concatenate([f[keep], fy[None, :]]),
    )


def _tracks_mei(spec: BenchmarkSpec) -> bool:
    return spec.kind == "omm"


def _record(gen: int, evals: int, pop: Population, spec: BenchmarkSpec, covered: int) -> TraceRecord:
    if _tracks_mei(spec):
        f1 = pop.objectives[:, 0]
        return TraceRecord(gen, evals, covered, mei(pop, spec.n), bool((f1 == 0).any() and (f1 == spec.n).any()))
    return TraceRecord(gen, evals, covered, None, False)


def _covered_count(oracle: FrontOracle, pop: Population) -> int:
    return coverage(oracle, pop)[0]


def run(
    cfg: AlgorithmConfig,
    spec: BenchmarkSpec,
    *,
    trace: bool = False,
    observer: Observer | None = None,
    rng: np.random.Generator | None = None,
) -> RunResult:
    """Run until the front is covered (if ``cfg.stop`` asks) or the budget is spent.

    For NSGA-II one generation costs N evaluations and coverage is checked
    on P_t after survival selection; GSEMO costs one evaluation per step.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    oracle = FrontOracle(spec)
    gsemo = cfg.algo == "gsemo"
    pop = random_population(spec, cfg.initial_evaluations, rng)
    evals = cfg.initial_evaluations
    gen = 0
    records: list[TraceRecord] | None = [] if trace else None
    covered_at = covered_gen = None

    covered = _covered_count(oracle, pop)

    def note():
        nonlocal covered_at, covered_gen
        if covered_at is None and covered == oracle.size:
            covered_at, covered_gen = evals, gen
        if records is not None:
            records.append(_record(gen, evals, pop, spec, covered))

    note()
    stop = observer is not None and observer(0, None, pop)
    while not stop:
        if covered_at is not None and cfg.stop == "front_covered":
            break
        if evals + cfg.evaluations_per_generation > cfg.budget:
            break
        gen += 1
        evals += cfg.evaluations_per_generation
        if gsemo:
            combined = None
            new = gsemo_step(pop, spec, rng)
            if new is not pop:
                covered = _covered_count(oracle, new)
            pop = new
        else:
            combined, pop = nsga2_step(pop, cfg, spec, rng)
            covered = _covered_count(oracle, pop)
        note()
        stop = observer is not None and observer(gen, combined, pop)

    return RunResult(evals, gen, covered_at, covered_gen, pop, records)
