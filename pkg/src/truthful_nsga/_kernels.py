"""Compiled inner loops for sorting and crowding distances.

Each kernel is a direct loop over the definition; the public wrappers in
``core`` and ``crowding`` validate inputs and handle correlated sorting.
"""

import numpy as np
from numba import njit

INF = np.inf


@njit(cache=True)
def front_ranks(f):
    """Front index (0-based) of every row, by domination counting."""
    s, m = f.shape
    dom = np.zeros((s, s), dtype=np.bool_)
    counts = np.zeros(s, dtype=np.int64)
    for i in range(s):
        for j in range(i + 1, s):
            ge = True
            le = True
            for a in range(m):
                ge &= f[i, a] >= f[j, a]
                le &= f[i, a] <= f[j, a]
            if ge and not le:
                dom[i, j] = True
                counts[j] += 1
            elif le and not ge:
                dom[j, i] = True
                counts[i] += 1
    rank = np.full(s, -1, dtype=np.int64)
    current = np.empty(s, dtype=np.int64)
    size = 0
    for i in range(s):
        if counts[i] == 0:
            current[size] = i
            size += 1
    r = 0
    while size > 0:
        nxt = np.empty(s, dtype=np.int64)
        nsize = 0
        for t in range(size):
            p = current[t]
            rank[p] = r
            for q in range(s):
                if dom[p, q]:
                    counts[q] -= 1
                    if counts[q] == 0:
                        nxt[nsize] = q
                        nsize += 1
        current = nxt
        size = nsize
        r += 1
    return rank


@njit(cache=True)
def _denominators(f, alive):
    s, m = f.shape
    den = np.zeros(m)
    for a in range(m):
        lo = INF
        hi = -INF
        for i in range(s):
            if alive[i]:
                v = f[i, a]
                if v < lo:
                    lo = v
                if v > hi:
                    hi = v
        if hi > lo:
            den[a] = hi - lo
    return den


@njit(cache=True)
def truthful(f, orders, alive):
    """Truthful crowding distance of the alive rows; dead rows get NaN.

    ``orders`` holds the correlated descending sortings of all rows; dead
    rows are skipped, which yields the sortings of the alive subset.
    """
    s, m = f.shape
    den = _denominators(f, alive)
    idx = np.empty(s, dtype=np.int64)
    c = 0
    for i in range(s):
        if alive[i]:
            idx[c] = i
            c += 1
    pos = np.full(s, -1, dtype=np.int64)
    for t in range(c):
        pos[idx[t]] = t
    # normalized L1 distances between alive rows; 0/0 summands count as 0
    dist = np.zeros((c, c))
    for u in range(c):
        for v in range(u + 1, c):
            d = 0.0
            for a in range(m):
                if den[a] > 0:
                    d += abs(f[idx[u], a] - f[idx[v], a]) / den[a]
            dist[u, v] = d
            dist[v, u] = d
    tcd = np.zeros(s)
    first = np.zeros(s, dtype=np.bool_)
    seen = np.empty(c, dtype=np.int64)
    for i in range(m):
        nseen = 0
        for j in range(s):
            x = orders[i, j]
            if not alive[x]:
                continue
            px = pos[x]
            if nseen == 0:
                first[x] = True
            else:
                best = INF
                for t in range(nseen):
                    d = dist[px, seen[t]]
                    if d < best:
                        best = d
                tcd[x] += best
            seen[nseen] = px
            nseen += 1
    for x in range(s):
        if not alive[x]:
            tcd[x] = np.nan
        elif first[x]:
            tcd[x] = INF
    return tcd


@njit(cache=True)
def classic(f, orders, alive):
    """Classic crowding distance of the alive rows; dead rows get NaN."""
    s, m = f.shape
    den = _denominators(f, alive)
    cd = np.zeros(s)
    boundary = np.zeros(s, dtype=np.bool_)
    seq = np.empty(s, dtype=np.int64)
    for i in range(m):
        c = 0
        for j in range(s):
            x = orders[i, j]
            if alive[x]:
                seq[c] = x
                c += 1
        if c == 0:
            continue
        boundary[seq[0]] = True
        boundary[seq[c - 1]] = True
        if den[i] > 0:
            for t in range(1, c - 1):
                cd[seq[t]] += abs(f[seq[t - 1], i] - f[seq[t + 1], i]) / den[i]
    for x in range(s):
        if not alive[x]:
            cd[x] = np.nan
        elif boundary[x]:
            cd[x] = INF
    return cd
