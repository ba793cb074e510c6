"""Independent brute-force references used by the tests.

Plain Python on tuples, deliberately sharing no code with the package.
"""

from itertools import product


def strictly_dominates(u, v):
    return all(a >= b for a, b in zip(u, v)) and any(a > b for a, b in zip(u, v))


def peel_fronts(values):
    """Repeatedly strip the non-dominated subset; returns lists of indices."""
    remaining = list(range(len(values)))
    fronts = []
    while remaining:
        front = [i for i in remaining if not any(strictly_dominates(values[j], values[i]) for j in remaining)]
        fronts.append(front)
        remaining = [i for i in remaining if i not in front]
    return fronts


def all_bitstrings(n):
    return [tuple(bits) for bits in product((0, 1), repeat=n)]


def onemax_f1_values_sorted(values, n):
    return sorted(set(v[0] for v in values) | {0, n})


def tcd_by_definition(values):
    """Truthful crowding distance straight from its definition.

    Sorts with the key (f_i desc, vector desc, position asc) and takes the
    minimum normalized L1 distance to every earlier element.
    """
    s = len(values)
    m = len(values[0])
    den = [max(v[a] for v in values) - min(v[a] for v in values) for a in range(m)]

    def d(u, v):
        return sum(abs(u[a] - v[a]) / den[a] for a in range(m) if den[a] != 0)

    out = [0.0] * s
    first = [False] * s
    for i in range(m):
        order = sorted(range(s), key=lambda p: (-values[p][i], tuple(-c for c in values[p]), p))
        first[order[0]] = True
        for j in range(1, s):
            out[order[j]] += min(d(values[order[k]], values[order[j]]) for k in range(j))
    return [float("inf") if first[p] else out[p] for p in range(s)]
