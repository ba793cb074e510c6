"""Approximation quality (MEI) and order statistics over experiment rows."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable, Sequence

import numpy as np

STATISTICS = ("median", "q1", "q3")


def mei(population, n: int) -> int:
    """Maximum empty interval of the f1 values of a OneMinMax population.

    The covered f1 values are padded with the boundary values 0 and n, so
    the metric is defined before the extremes are found and coincides with
    the usual definition once 0^n and 1^n are present.
    """
    f = np.asarray(getattr(population, "objectives", population))
    f1 = f[:, 0] if f.ndim == 2 else f
    values = np.union1d(f1, [0, n])
    return int(np.diff(values).max()) if len(values) > 1 else 0


def mei_bound(n: int, N: int) -> float:
    """Guaranteed MEI of the sequential truthful NSGA-II: max{2n/(N-1), 1}."""
    return max(2 * n / (N - 1), 1.0)


def best_possible_mei(n: int, N: int) -> int:
    return math.ceil(n / (N - 1))


def median(values: Sequence[float]) -> float:
    v = sorted(values)
    mid = len(v) // 2
    return float(v[mid]) if len(v) % 2 else (v[mid - 1] + v[mid]) / 2


def nearest_rank(values: Sequence[float], p: float) -> float:
    """Quantile by the nearest-rank rule: the ceil(p*len)-th smallest value."""
    v = sorted(values)
    rank = max(1, math.ceil(p * len(v)))
    return float(v[rank - 1])


def statistic(values: Sequence[float], name: str) -> float:
    if name == "median":
        return median(values)
    if name == "q1":
        return nearest_rank(values, 0.25)
    if name == "q3":
        return nearest_rank(values, 0.75)
    raise ValueError(f"unknown statistic {name!r}; choose from {STATISTICS}")


_GROUP_KEYS = ("preset", "algo", "benchmark", "n", "m", "k", "N", "metric", "generation")


def aggregate(rows: Iterable[dict], stat: str = "median") -> list[dict]:
    """Collapse runs into one row per group carrying the order statistic.

    Rows are grouped by everything except run, seed and value. Empty values
    (e.g. runs that never covered the front) are left out; a group with no
    values is omitted. The output metric is renamed ``<metric>:<stat>``.
    """
    groups: dict[tuple, list[float]] = defaultdict(list)
    firsts: dict[tuple, dict] = {}
    for row in rows:
        key = tuple(str(row.get(k, "")) for k in _GROUP_KEYS)
        firsts.setdefault(key, row)
        if row.get("value", "") not in ("", None):
            groups[key].append(float(row["value"]))
    out = []
    for key, row in firsts.items():
        vals = groups.get(key)
        if not vals:
            continue
        agg = dict(row)
        agg.update(run="", seed="", metric=f"{row['metric']}:{stat}", value=_fmt(statistic(vals, stat)))
        out.append(agg)
    return out


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))
