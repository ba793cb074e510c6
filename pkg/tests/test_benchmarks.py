import numpy as np
import pytest

from truthful_nsga.benchmarks import (
    BenchmarkSpec,
    FrontOracle,
    coverage,
    enumerate_front,
    evaluate,
    is_front_value,
    pareto_front_size,
)
from truthful_nsga.core import ConfigError, ContractError

from oracles import all_bitstrings, peel_fronts


def bits(s):
    return np.array([int(c) for c in s], dtype=np.uint8)


@pytest.mark.parametrize(
    "spec, x, expected",
    [
        (BenchmarkSpec("omm", 4), "1100", (2, 2)),
        (BenchmarkSpec("lotz", 4), "1010", (1, 1)),
        (BenchmarkSpec("ojzj", 6, k=2), "111110", (1, 3)),
        (BenchmarkSpec("m-omm", 4, m=4), "1100", (0, 2, 2, 0)),
        (BenchmarkSpec("omm", 3), "000", (3, 0)),
        (BenchmarkSpec("lotz", 5), "11000", (2, 3)),
        (BenchmarkSpec("cocz", 4), "1110", (3, 3)),
        (BenchmarkSpec("cocz", 4), "0111", (3, 1)),
    ],
)
def test_evaluate_examples(spec, x, expected):
    assert tuple(evaluate(spec, bits(x)).tolist()) == expected


def test_evaluate_batch_matches_single():
    spec = BenchmarkSpec("m-lotz", 12, m=4)
    x = np.random.default_rng(0).integers(0, 2, (20, 12), dtype=np.uint8)
    batch = evaluate(spec, x)
    for row, v in zip(x, batch):
        np.testing.assert_array_equal(evaluate(spec, row), v)


@pytest.mark.parametrize(
    "spec, size",
    [
        (BenchmarkSpec("omm", 10), 11),
        (BenchmarkSpec("m-omm", 8, m=4), 25),
        (BenchmarkSpec("ojzj", 10, k=2), 9),
        (BenchmarkSpec("cocz", 10), 6),
        (BenchmarkSpec("lotz", 7), 8),
    ],
)
def test_front_size_examples(spec, size):
    assert pareto_front_size(spec) == size


def _small_specs():
    for n in range(1, 15):
        yield BenchmarkSpec("omm", n)
        yield BenchmarkSpec("lotz", n)
        if n % 2 == 0:
            yield BenchmarkSpec("cocz", n)
        for k in range(1, n // 2 + 1):
            yield BenchmarkSpec("ojzj", n, k=k)
    for n in (2, 4, 6, 8):
        yield BenchmarkSpec("m-omm", n, m=4)
        yield BenchmarkSpec("m-lotz", n, m=4)
    for n in (4, 8, 12):
        yield BenchmarkSpec("m-cocz", n, m=4)
    yield BenchmarkSpec("m-ojzj", 8, m=4, k=2)
    yield BenchmarkSpec("m-omm", 6, m=6)


@pytest.mark.parametrize("spec", list(_small_specs()), ids=lambda s: f"{s.label()}-n{s.n}-m{s.m}")
def test_front_agrees_with_exhaustive_search(spec):
    front = enumerate_front(spec)
    oracle = FrontOracle(spec)
    assert pareto_front_size(spec) == len(front)
    assert {tuple(v) for v in oracle.values().tolist()} == front
    grid = np.array(all_bitstrings(spec.n), dtype=np.uint8)
    values = evaluate(spec, grid)
    member = is_front_value(oracle, values)
    assert {tuple(v) for v in values[member].tolist()} == front


def test_enumeration_matches_independent_peeling():
    spec = BenchmarkSpec("ojzj", 6, k=2)
    values = sorted({tuple(evaluate(spec, np.array(x)).tolist()) for x in all_bitstrings(6)})
    first = {values[i] for i in peel_fronts(values)[0]}
    assert first == enumerate_front(spec)
    # (5,5) dominates (1,3)
    assert not is_front_value(FrontOracle(spec), (1, 3))


def test_membership_examples():
    lotz = FrontOracle(BenchmarkSpec("lotz", 6))
    assert is_front_value(lotz, (3, 3))
    assert not is_front_value(lotz, (3, 2))
    omm = FrontOracle(BenchmarkSpec("omm", 6))
    assert all(is_front_value(omm, (a, 6 - a)) for a in range(7))


def test_coverage_examples():
    spec = BenchmarkSpec("omm", 4)
    oracle = FrontOracle(spec)
    everything = evaluate(spec, np.array(all_bitstrings(4), dtype=np.uint8))
    assert coverage(oracle, everything) == (5, 5)
    assert coverage(oracle, evaluate(spec, np.zeros((1, 4), dtype=np.uint8))) == (1, 5)


def test_coverage_matches_set_intersection():
    rng = np.random.default_rng(1)
    for spec in (BenchmarkSpec("m-lotz", 8, m=4), BenchmarkSpec("ojzj", 12, k=3), BenchmarkSpec("m-cocz", 8, m=4)):
        front = enumerate_front(spec)
        for _ in range(20):
            pop = evaluate(spec, rng.integers(0, 2, (30, spec.n), dtype=np.uint8))
            expected = len({tuple(v) for v in pop.tolist()} & front)
            assert coverage(FrontOracle(spec), pop) == (expected, len(front))


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="omm", n=0),
        dict(kind="omm", n=4, m=4),
        dict(kind="m-omm", n=5, m=4),
        dict(kind="m-omm", n=6, m=3),
        dict(kind="cocz", n=5),
        dict(kind="m-cocz", n=6, m=4),
        dict(kind="ojzj", n=6),
        dict(kind="ojzj", n=6, k=4),
        dict(kind="m-ojzj", n=8, m=4, k=1),
        dict(kind="lotz", n=6, k=2),
        dict(kind="zdt1", n=6),
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(ConfigError):
        BenchmarkSpec(**kwargs)


def test_length_mismatch():
    with pytest.raises(ContractError):
        evaluate(BenchmarkSpec("omm", 4), np.zeros(5))
