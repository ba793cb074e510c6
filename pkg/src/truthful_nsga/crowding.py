"""Classic and truthful crowding distances and NSGA-II survival selection.

Both distances work on a front given as an ``(s, m)`` objective array whose
row order is the stable population order. Every per-objective sort uses
correlated tie-breaking, so individuals with identical objective vectors
keep one fixed relative order in all ``m`` sortings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import ContractError, Population, non_dominated_sort

INF = float("inf")

CD_KINDS = ("classic", "truthful")
MODES = ("standard", "sequential")


@dataclass(frozen=True)
class SortedViews:
    orders: np.ndarray  # (m, s): orders[i] lists row positions by descending f_i
    denominators: np.ndarray  # (m,): f_i range over the front, >= 0


def _front_array(front) -> np.ndarray:
    f = np.asarray(getattr(front, "objectives", front))
    if f.ndim != 2 or len(f) == 0:
        raise ContractError("crowding distances need a non-empty (s, m) objective array")
    return f


def correlated_sort(front, indices=None) -> SortedViews:
    """Sort a front once per objective, descending, with correlated ties.

    Ties in ``f_i`` are broken by the whole objective vector
    (lexicographically descending) and then by ``indices`` ascending
    (default: row position).
    """
    f = _front_array(front)
    s, m = f.shape
    idx = np.arange(s) if indices is None else np.asarray(indices)
    # lexsort's primary key is the last one
    tail = [idx] + [-f[:, a] for a in range(m - 1, -1, -1)]
    orders = np.stack([np.lexsort(tail + [-f[:, i]]) for i in range(m)])
    denominators = (f.max(axis=0) - f.min(axis=0)).astype(float)
    return SortedViews(orders, denominators)


def normalized_l1(views: SortedViews, a, b) -> float:
    """Range-normalized L1 distance; objectives with zero range contribute 0."""
    diff = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    den = views.denominators
    terms = np.divide(diff, den, out=np.zeros_like(diff), where=den > 0)
    return float(terms.sum())


def _kernel_input(front, indices):
    f = np.ascontiguousarray(_front_array(front))
    views = correlated_sort(f, indices)
    return f, np.ascontiguousarray(views.orders)


def truthful_crowding_distance(front, indices=None) -> np.ndarray:
    """Truthful crowding distance of every row of ``front``.

    A row first in some objective's sorting gets ``inf``. Otherwise its
    value is the sum over objectives of the smallest normalized L1 distance
    to any row placed before it in that objective's sorting. Theta(m s^2).
    """
    f, orders = _kernel_input(front, indices)
    return _kernels.truthful(f, orders, np.ones(len(f), dtype=bool))


def classic_crowding_distance(front, indices=None) -> np.ndarray:
    """Original NSGA-II crowding distance on the correlated sortings."""
    f, orders = _kernel_input(front, indices)
    return _kernels.classic(f, orders, np.ones(len(f), dtype=bool))


def crowding_distance(front, kind: str = "truthful", indices=None) -> np.ndarray:
    if kind == "truthful":
        return truthful_crowding_distance(front, indices)
    if kind == "classic":
        return classic_crowding_distance(front, indices)
    raise ContractError(f"unknown crowding distance kind {kind!r}")


def select_from_front(
    front,
    n_remove: int,
    cd_kind: str,
    mode: str,
    rng: np.random.Generator,
    *,
    reuse_zero_removals: bool = True,
) -> np.ndarray:
    """Remove ``n_remove`` rows of a critical front; return kept row positions.

    Each removal takes a row of minimum crowding distance, ties broken
    uniformly at random. In ``sequential`` mode distances are recomputed
    after every removal. Removing a row whose truthful distance is exactly
    0 provably leaves all other truthful distances unchanged, so with
    ``reuse_zero_removals`` that recomputation is skipped; the result is
    identical either way.
    """
    s = len(_front_array(front))
    if not 0 <= n_remove <= s:
        raise ContractError(f"cannot remove {n_remove} of {s} individuals")
    if mode not in MODES:
        raise ContractError(f"unknown selection mode {mode!r}")
    if cd_kind not in CD_KINDS:
        raise ContractError(f"unknown crowding distance kind {cd_kind!r}")
    if n_remove == 0:
        return np.arange(s)

    # sortings of a subset are the full sortings with removed rows skipped
    f, orders = _kernel_input(front, None)
    kernel = _kernels.truthful if cd_kind == "truthful" else _kernels.classic
    alive = np.ones(s, dtype=bool)
    cd = kernel(f, orders, alive)

    if mode == "standard":
        perm = rng.permutation(s)
        ranked = perm[np.argsort(cd[perm], kind="stable")]
        return np.sort(ranked[n_remove:])

    for step in range(n_remove):
        live = np.flatnonzero(alive)
        values = cd[live]
        minima = live[values == values.min()]
        pick = minima[rng.integers(len(minima))]
        alive[pick] = False
        if step == n_remove - 1:
            break
        if cd_kind == "truthful" and cd[pick] == 0 and reuse_zero_removals:
            cd[pick] = np.nan
        else:
            cd = kernel(f, orders, alive)
    return np.flatnonzero(alive)


def survival_select(
    combined: Population,
    N: int,
    cd_kind: str = "truthful",
    mode: str = "standard",
    rng: np.random.Generator | None = None,
    *,
    fronts: list[np.ndarray] | None = None,
) -> Population:
    """Pick the next population of size ``N`` from ``combined``.

    Whole fronts are taken while they fit; the critical front is thinned by
    crowding distance. Survivors keep their order in ``combined``.
    """
    if N < 1 or len(combined) < N:
        raise ContractError(f"cannot select {N} survivors from {len(combined)} individuals")
    if cd_kind not in CD_KINDS:
        raise ContractError(f"unknown crowding distance kind {cd_kind!r}")
    if rng is None:
        rng = np.random.default_rng()
    if fronts is None:
        fronts = non_dominated_sort(combined.objectives)

    kept = []
    total = 0
    for front in fronts:
        if total + len(front) <= N:
            kept.append(front)
            total += len(front)
            if total == N:
                break
            continue
        n_remove = total + len(front) - N
        rows = select_from_front(combined.objectives[front], n_remove, cd_kind, mode, rng)
        kept.append(front[rows])
        break
    return combined.take(np.sort(np.concatenate(kept)))
