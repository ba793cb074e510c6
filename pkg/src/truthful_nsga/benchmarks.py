"""Pseudo-Boolean multi-objective benchmarks with closed-form Pareto fronts.

All functions are maximized. The ``m``-objective variants cut the genome
into consecutive blocks and apply the bi-objective function per block,
except mCOCZ, where the first half of the genome is a cooperative part
shared by every objective and only the second half is cut into blocks:

    f_{2i-1}(x) = |coop|_1 + |block_i|_1
    f_{2i}(x)   = |coop|_1 + |block_i|_0
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import ConfigError, ContractError, Population

KINDS = ("omm", "cocz", "lotz", "ojzj", "m-omm", "m-cocz", "m-lotz", "m-ojzj")

_ALIASES = {
    "onemimax": "omm",
    "oneminmax": "omm",
    "moneminmax": "m-omm",
    "mcocz": "m-cocz",
    "mlotz": "m-lotz",
    "mojzj": "m-ojzj",
    "onejumpzerojump": "ojzj",
}


@dataclass(frozen=True)
class BenchmarkSpec:
    kind: str
    n: int
    m: int = 2
    k: int | None = None

    def __post_init__(self):
        kind = _ALIASES.get(self.kind.lower(), self.kind.lower())
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise ConfigError(f"unknown benchmark {self.kind!r}; choose from {', '.join(KINDS)}")
        n, m, k = self.n, self.m, self.k
        if n < 1:
            raise ConfigError("problem size n must be positive")
        if not self.many:
            if m != 2:
                raise ConfigError(f"{kind} is bi-objective; got m={m}")
        elif m < 2 or m % 2:
            raise ConfigError(f"m must be even and >= 2; got {m}")
        elif kind == "m-cocz":
            if n % m:
                raise ConfigError(f"m-cocz needs n divisible by m; got n={n}, m={m}")
        elif n % (m // 2):
            raise ConfigError(f"n must be divisible by m/2; got n={n}, m={m}")
        if kind == "cocz" and n % 2:
            raise ConfigError("cocz needs an even n")
        if kind == "ojzj":
            if k is None or not 1 <= k <= n // 2:
                raise ConfigError(f"ojzj needs k in [1..n/2]; got k={k}")
        elif kind == "m-ojzj":
            if k is None or not 2 <= k <= n // m:
                raise ConfigError(f"m-ojzj needs k in [2..n/m]; got k={k}")
        elif k is not None:
            raise ConfigError(f"{kind} takes no jump parameter k")

    @property
    def many(self) -> bool:
        return self.kind.startswith("m-")

    @property
    def base(self) -> str:
        return self.kind[2:] if self.many else self.kind

    @property
    def blocks(self) -> int:
        return self.m // 2

    @property
    def block_length(self) -> int:
        """Length of the bit block each objective pair reads (conflicting part for COCZ)."""
        if self.base == "cocz":
            return self.n // self.m if self.many else self.n // 2
        return self.n // self.blocks

    def label(self) -> str:
        return self.kind if self.k is None else f"{self.kind}_{self.k}"


def _leading_ones(x: np.ndarray) -> np.ndarray:
    # index of the first zero, or the length when there is none
    zero = x == 0
    return np.where(zero.any(axis=1), zero.argmax(axis=1), x.shape[1])


def _pair(base: str, block: np.ndarray, k: int | None) -> tuple[np.ndarray, np.ndarray]:
    length = block.shape[1]
    ones = block.sum(axis=1, dtype=np.int64)
    zeros = length - ones
    if base == "omm":
        return zeros, ones
    if base == "lotz":
        return _leading_ones(block), _leading_ones(1 - block[:, ::-1])
    if base == "ojzj":
        f1 = np.where((ones <= length - k) | (ones == length), k + ones, length - ones)
        f2 = np.where((zeros <= length - k) | (zeros == length), k + zeros, length - zeros)
        return f1, f2
    raise AssertionError(base)


def evaluate(spec: BenchmarkSpec, x) -> np.ndarray:
    """Objective vector(s) of one genome ``(n,)`` or a batch ``(rows, n)``."""
    x = np.asarray(x, dtype=np.int64)
    single = x.ndim == 1
    batch = np.atleast_2d(x)
    if batch.shape[1] != spec.n:
        raise ContractError(f"genome length {batch.shape[1]} does not match n={spec.n}")
    out = np.empty((len(batch), spec.m), dtype=np.int64)
    if spec.base == "cocz":
        half = spec.n // 2
        coop = batch[:, :half].sum(axis=1)
        w = spec.block_length
        for b in range(spec.blocks):
            ones = batch[:, half + b * w : half + (b + 1) * w].sum(axis=1)
            out[:, 2 * b] = coop + ones
            out[:, 2 * b + 1] = coop + (w - ones)
    else:
        w = spec.block_length
        for b in range(spec.blocks):
            out[:, 2 * b], out[:, 2 * b + 1] = _pair(spec.base, batch[:, b * w : (b + 1) * w], spec.k)
    return out[0] if single else out


def _block_front(spec: BenchmarkSpec) -> list[tuple[int, int]]:
    """Pareto-optimal value pairs of a single block."""
    w, k = spec.block_length, spec.k
    if spec.base in ("omm", "lotz"):
        return [(w - j, j) if spec.base == "omm" else (j, w - j) for j in range(w + 1)]
    if spec.base == "cocz":
        coop = spec.n // 2
        return [(coop + j, coop + w - j) for j in range(w + 1)]
    # |x|_1 in {0} u [k..w-k] u {w}; each such block scores (k + |x|_1, k + |x|_0)
    return [(k + j, k + w - j) for j in (0, *range(k, w - k + 1), w)]


def pareto_front_size(spec: BenchmarkSpec) -> int:
    w = spec.block_length
    if spec.base in ("omm", "lotz", "cocz"):
        per_block = w + 1
    else:
        per_block = w - 2 * spec.k + 3
    return per_block**spec.blocks


@dataclass(frozen=True)
class FrontOracle:
    spec: BenchmarkSpec
    size: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "size", pareto_front_size(self.spec))

    def contains(self, values) -> np.ndarray:
        return is_front_value(self, values)

    def values(self) -> np.ndarray:
        """All Pareto-optimal objective vectors, one per row."""
        pairs = _block_front(self.spec)
        rows = [sum(combo, ()) for combo in itertools.product(pairs, repeat=self.spec.blocks)]
        return np.array(rows, dtype=np.int64)


def is_front_value(oracle: FrontOracle, values) -> np.ndarray | bool:
    """Closed-form Pareto-front membership of objective vector(s)."""
    spec = oracle.spec
    v = np.asarray(values, dtype=np.int64)
    single = v.ndim == 1
    v = np.atleast_2d(v)
    if v.shape[1] != spec.m:
        raise ContractError(f"expected {spec.m} objectives, got {v.shape[1]}")
    w, k = spec.block_length, spec.k
    ok = np.ones(len(v), dtype=bool)
    if spec.base == "cocz":
        coop = spec.n // 2
    for b in range(spec.blocks):
        a, c = v[:, 2 * b], v[:, 2 * b + 1]
        if spec.base in ("omm", "lotz"):
            ok &= (a + c == w) & (a >= 0) & (c >= 0)
        elif spec.base == "cocz":
            ok &= (a + c == 2 * coop + w) & (a >= coop) & (a <= coop + w)
        else:
            ok &= (a + c == w + 2 * k) & (((a >= 2 * k) & (a <= w)) | (a == k) | (a == w + k))
    return bool(ok[0]) if single else ok


def _distinct_count(values: np.ndarray) -> int:
    if len(values) == 0:
        return 0
    lo = values.min(axis=0)
    base = int(values.max() - lo.min()) + 1
    if base ** values.shape[1] >= 2**62:
        return len(np.unique(values, axis=0))
    keys = (values - lo) @ (base ** np.arange(values.shape[1], dtype=np.int64))
    return len(np.unique(keys))


def coverage(oracle: FrontOracle, population) -> tuple[int, int]:
    """(distinct Pareto-optimal values present, front size)."""
    f = np.atleast_2d(np.asarray(getattr(population, "objectives", population)))
    if f.size == 0:
        return 0, oracle.size
    return _distinct_count(f[is_front_value(oracle, f)]), oracle.size


def enumerate_front(spec: BenchmarkSpec) -> set[tuple[int, ...]]:
    """Pareto front by exhaustive search over {0,1}^n; for small n only."""
    if spec.n > 20:
        raise ContractError("exhaustive enumeration is limited to n <= 20")
    grid = (np.arange(2**spec.n)[:, None] >> np.arange(spec.n)[::-1]) & 1
    values = np.unique(evaluate(spec, grid), axis=0)
    ge = np.all(values[:, None, :] >= values[None, :, :], axis=2)
    gt = np.any(values[:, None, :] > values[None, :, :], axis=2)
    dominated = (ge & gt).any(axis=0)
    return {tuple(int(t) for t in row) for row in values[~dominated]}


def random_population(spec: BenchmarkSpec, size: int, rng: np.random.Generator) -> Population:
    genomes = rng.integers(0, 2, size=(size, spec.n), dtype=np.uint8)
    return Population(genomes, evaluate(spec, genomes))
