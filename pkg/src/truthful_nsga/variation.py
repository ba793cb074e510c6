"""Mutation, crossover and offspring generation on bit-vector populations.

The operators accept a single genome ``(n,)`` or a batch ``(rows, n)`` and
act row-wise; inputs are never modified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .benchmarks import BenchmarkSpec, evaluate
from .core import ConfigError, ContractError, Population

SELECTIONS = ("fair", "random")
MUTATIONS = ("one_bit", "bitwise")


@dataclass(frozen=True)
class VariationConfig:
    selection: str = "random"
    mutation: str = "bitwise"
    crossover_rate: float = 0.0

    def __post_init__(self):
        mutation = self.mutation.replace("-", "_")
        object.__setattr__(self, "mutation", mutation)
        if self.selection not in SELECTIONS:
            raise ConfigError(f"selection must be one of {SELECTIONS}, got {self.selection!r}")
        if mutation not in MUTATIONS:
            raise ConfigError(f"mutation must be one of {MUTATIONS}, got {self.mutation!r}")
        if not 0.0 <= self.crossover_rate < 1.0:
            raise ConfigError(f"crossover rate must lie in [0, 1), got {self.crossover_rate}")
        if self.selection == "fair" and self.crossover_rate > 0:
            raise ConfigError("fair parent selection is mutation-only; set crossover_rate to 0")


def one_bit_mutation(x, rng: np.random.Generator) -> np.ndarray:
    """Flip exactly one uniformly chosen bit per row."""
    x = np.asarray(x, dtype=np.uint8)
    batch = np.atleast_2d(x).copy()
    pos = rng.integers(batch.shape[1], size=len(batch))
    batch[np.arange(len(batch)), pos] ^= 1
    return batch[0] if x.ndim == 1 else batch


def bitwise_mutation(x, rng: np.random.Generator) -> np.ndarray:
    """Flip each bit independently with probability 1/n."""
    x = np.asarray(x, dtype=np.uint8)
    flips = rng.random(x.shape) < 1.0 / x.shape[-1]
    return x ^ flips.astype(np.uint8)


def uniform_crossover(x, y, rng: np.random.Generator) -> np.ndarray:
    """Take every bit from ``x`` or ``y`` with probability 1/2 each."""
    x = np.asarray(x, dtype=np.uint8)
    y = np.asarray(y, dtype=np.uint8)
    if x.shape != y.shape:
        raise ContractError(f"crossover parents differ in shape: {x.shape} vs {y.shape}")
    return np.where(rng.random(x.shape) < 0.5, x, y)


def mutate(x, cfg: VariationConfig, rng: np.random.Generator) -> np.ndarray:
    if cfg.mutation == "one_bit":
        return one_bit_mutation(x, rng)
    return bitwise_mutation(x, rng)


def generate_offspring(
    parents: Population,
    cfg: VariationConfig,
    spec: BenchmarkSpec,
    rng: np.random.Generator,
    *,
    return_crossover_mask: bool = False,
):
    """Create and evaluate ``len(parents)`` offspring.

    Fair selection mutates every parent once, in order. Random selection
    flips an independent crossover coin per offspring slot: heads gives
    the uniform crossover of two parents drawn uniformly with replacement
    (no mutation afterwards), tails a mutated uniformly drawn parent.
    """
    N = len(parents)
    genomes = parents.genomes
    if cfg.selection == "fair":
        children = mutate(genomes, cfg, rng)
        crossed = np.zeros(N, dtype=bool)
    else:
        crossed = rng.random(N) < cfg.crossover_rate
        first = rng.integers(N, size=N)
        children = mutate(genomes[first], cfg, rng)
        if crossed.any():
            second = rng.integers(N, size=int(crossed.sum()))
            children[crossed] = uniform_crossover(genomes[first[crossed]], genomes[second], rng)
    offspring = Population(children, evaluate(spec, children))
    if return_crossover_mask:
        return offspring, crossed
    return offspring
