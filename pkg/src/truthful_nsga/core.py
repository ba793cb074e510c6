"""Domain types, Pareto dominance (maximization) and non-dominated sorting."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import front_ranks


class ContractError(ValueError):
    """Raised when an operation is called outside its preconditions."""


class ConfigError(ValueError):
    """Raised for invalid benchmark, variation or algorithm configuration."""


class Dominance(enum.Enum):
    FIRST = "first_strictly_dominates"
    SECOND = "second_strictly_dominates"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def as_bitvector(bits: Sequence[int] | np.ndarray | str) -> np.ndarray:
    """Validate and freeze a genome as a read-only uint8 array.

    Strings such as ``"1010"`` are accepted for convenience.
    """
    if isinstance(bits, str):
        bits = [int(c) for c in bits]
    arr = np.array(bits, dtype=np.uint8)
    if arr.ndim != 1 or arr.size == 0:
        raise ContractError("a bit vector must be a non-empty 1-D sequence")
    if np.any(arr > 1):
        raise ContractError("a bit vector may only contain 0 and 1")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Individual:
    genome: np.ndarray
    objectives: np.ndarray
    index: int


@dataclass
class Population:
    """Row-aligned genomes and cached objective vectors.

    Row ``i`` is the individual with index ``i``; indices are therefore
    always ``0..len-1`` in order.
    """

    genomes: np.ndarray  # (size, n) uint8
    objectives: np.ndarray  # (size, m) int64

    def __post_init__(self):
        self.genomes = np.asarray(self.genomes, dtype=np.uint8)
        self.objectives = np.asarray(self.objectives)
        if self.genomes.ndim != 2 or self.objectives.ndim != 2:
            raise ContractError("genomes and objectives must be 2-D arrays")
        if len(self.genomes) != len(self.objectives):
            raise ContractError("genomes and objectives are not row-aligned")

    def __len__(self) -> int:
        return len(self.genomes)

    def __getitem__(self, i: int) -> Individual:
        return Individual(self.genomes[i], self.objectives[i], int(i))

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def n(self) -> int:
        return self.genomes.shape[1]

    @property
    def m(self) -> int:
        return self.objectives.shape[1]

    def take(self, rows) -> "Population":
        rows = np.asarray(rows, dtype=np.intp)
        return Population(self.genomes[rows], self.objectives[rows])

    def concat(self, other: "Population") -> "Population":
        return Population(
            np.concatenate([self.genomes, other.genomes]),
            np.concatenate([self.objectives, other.objectives]),
        )


def _objectives_of(obj) -> np.ndarray:
    if isinstance(obj, Population):
        return obj.objectives
    return np.asarray(obj)


def compare_dominance(u, v) -> Dominance:
    """Compare two objective vectors under maximization."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape or u.ndim != 1 or u.size == 0:
        raise ContractError(f"objective vectors of shapes {u.shape} and {v.shape} are not comparable")
    ge = bool(np.all(u >= v))
    le = bool(np.all(u <= v))
    if ge and le:
        return Dominance.EQUAL
    if ge:
        return Dominance.FIRST
    if le:
        return Dominance.SECOND
    return Dominance.INCOMPARABLE


def dominance_matrix(objectives) -> np.ndarray:
    """Boolean matrix ``D`` with ``D[i, j]`` true iff row i strictly dominates row j."""
    f = _objectives_of(objectives)
    ge = np.all(f[:, None, :] >= f[None, :, :], axis=2)
    gt = np.any(f[:, None, :] > f[None, :, :], axis=2)
    return ge & gt


def non_dominated_sort(population) -> list[np.ndarray]:
    """Partition rows into fronts F1, F2, ... of row indices.

    Accepts a :class:`Population` or an ``(size, m)`` objective array.
    Uses the O(m|R|^2) domination-count scheme; indices inside each front
    are ascending, i.e. input order is kept.
    """
    f = _objectives_of(population)
    if f.ndim != 2 or len(f) == 0:
        raise ContractError("non-dominated sorting needs a non-empty (size, m) array")
    rank = front_ranks(np.ascontiguousarray(f))
    return [np.flatnonzero(rank == r) for r in range(int(rank.max()) + 1)]
