"""Straight-line reference for the occupation decision rule.

Deliberately written with plain Python lists and ``math`` only - no numpy,
nothing imported from the package - so the suite has a second, independent
implementation to hold the kernels against.  Accumulation runs in
ascending neighbor order, the order both kernels use, which makes the
comparison exact when the geometry's distances are exactly representable.
"""

import math


def ref_adjacency(xy, r_n, d_min, alpha):
    """Brute-force neighbor lists: (ids, weights) per node, ids ascending.

    Weights double as propagation gains; both follow max(d, d_min)**-alpha.
    """
    n = len(xy)
    ids = [[] for _ in range(n)]
    wts = [[] for _ in range(n)]
    for v in range(n):
        for u in range(n):
            if u == v:
                continue
            dx = xy[u][0] - xy[v][0]
            dy = xy[u][1] - xy[v][1]
            d = math.sqrt(dx * dx + dy * dy)
            if d <= r_n:
                ids[v].append(u)
                wts[v].append(max(d, d_min) ** -alpha)
    return ids, wts


def ref_decide(v, sbos, ids, wts, p_t, sig, n0, w_hz, threshold):
    """One full decision for node v against frozen neighbor rows.

    Tally weighted votes, occupy every sub-band whose vote is non-positive,
    then escalate - least-contested open band first, lowest index on ties -
    until the local rate estimate reaches the threshold or nothing is open.
    Returns ``(new_row, estimate)`` and leaves ``sbos`` untouched.
    """
    S = len(sbos[v])
    votes = [0.0] * S
    acc = [0.0] * S
    for u, wt in zip(ids[v], wts[v]):
        for k in range(S):
            votes[k] += wt * sbos[u][k]
            if sbos[u][k] == 1:
                acc[k] += wt
    per_band = [
        w_hz * math.log2(1.0 + sig / (n0 + p_t * acc[k])) for k in range(S)
    ]
    b = [1 if votes[k] <= 0.0 else -1 for k in range(S)]
    est = 0.0
    for k in range(S):
        if b[k] == 1:
            est += per_band[k]
    while est < threshold:
        open_bands = [k for k in range(S) if b[k] == -1]
        if not open_bands:
            break
        contested = [k for k in open_bands if votes[k] > 0.0]
        if contested:
            pick = contested[0]
            for k in contested[1:]:
                if votes[k] < votes[pick]:
                    pick = k
        else:
            pick = open_bands[0]
        b[pick] = 1
        votes[pick] = -1.0
        est = 0.0
        for k in range(S):
            if b[k] == 1:
                est += per_band[k]
    return b, est


def ref_global_rates(xy, sbos, d_min, alpha, p_t, sig, n0, w_hz):
    """Realized per-node rates with interference from every other node."""
    n = len(xy)
    S = len(sbos[0]) if n else 0
    out = []
    for v in range(n):
        total = 0.0
        for k in range(S):
            if sbos[v][k] != 1:
                continue
            intf = 0.0
            for u in range(n):
                if u == v or sbos[u][k] != 1:
                    continue
                dx = xy[u][0] - xy[v][0]
                dy = xy[u][1] - xy[v][1]
                d = max(math.sqrt(dx * dx + dy * dy), d_min)
                intf += p_t * d**-alpha
            total += w_hz * math.log2(1.0 + sig / (n0 + intf))
        out.append(total)
    return out


def ref_jain(values):
    s = sum(values)
    sq = sum(x * x for x in values)
    return (s * s) / (len(values) * sq)
