"""NSGA-II with the truthful crowding distance, plus classic, sequential and
GSEMO baselines on pseudo-Boolean benchmarks with exact Pareto fronts."""

from .algorithms import ALGORITHMS, AlgorithmConfig, RunResult, gsemo_step, nsga2_generation, run
from .benchmarks import (
    BenchmarkSpec,
    FrontOracle,
    coverage,
    enumerate_front,
    evaluate,
    is_front_value,
    pareto_front_size,
)
from .core import (
    ConfigError,
    ContractError,
    Dominance,
    Individual,
    Population,
    as_bitvector,
    compare_dominance,
    non_dominated_sort,
)
from .crowding import (
    SortedViews,
    classic_crowding_distance,
    correlated_sort,
    normalized_l1,
    survival_select,
    truthful_crowding_distance,
)
from .metrics import aggregate, mei
from .variation import VariationConfig, bitwise_mutation, generate_offspring, one_bit_mutation, uniform_crossover

__version__ = "0.1.0"
