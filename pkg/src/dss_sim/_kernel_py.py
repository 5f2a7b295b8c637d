"""Pure NumPy implementation of the hot simulation kernels.

Drop-in twin of the compiled ``_speedups`` extension; ``dss_sim.kernel``
picks whichever is available (or honors DSS_SIM_PURE_PYTHON=1).  Keep the
two implementations semantically identical: same candidate rule, same tie
breaking, same clamping, same accumulation structure.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def decide_node(v, sbos, indptr, indices, weights, gains, tx_power,
                sig_power, noise_power, band_width, threshold):
    """Run one full occupation decision for node v, in place.

    Tallies weighted neighbor votes, takes the social decision (occupy
    exactly the sub-bands with non-positive vote), then escalates band by
    band - least-contested first, lowest index on ties - until the locally
    estimated rate reaches ``threshold`` or every sub-band is occupied.
    Writes the new row into ``sbos[v]`` and returns ``(changed, est_rate)``.
    """
    S = sbos.shape[1]
    lo, hi = int(indptr[v]), int(indptr[v + 1])
    votes = np.zeros(S)
    acc = np.zeros(S)
    # One neighbor at a time, in adjacency order: a blocked matrix product
    # can round mathematically tied votes differently per band position,
    # and the argmin tie-break below is sensitive to that last ulp.
    for j in range(lo, hi):
        row = sbos[indices[j]]
        votes += weights[j] * row
        acc += gains[j] * (row == 1)
    per_band = band_width * np.log2(
        1.0 + sig_power / (noise_power + tx_power * acc))
    b = np.where(votes <= 0.0, 1, -1).astype(np.int8)
    est = float(per_band[b == 1].sum())
    if est < threshold and np.any(b == -1):
        while est < threshold:
            open_bands = np.flatnonzero(b == -1)
            if open_bands.size == 0:
                break
            contested = open_bands[votes[open_bands] > 0.0]
            if contested.size:
                k = int(contested[np.argmin(votes[contested])])
            else:
                k = int(open_bands[0])
            b[k] = 1
            votes[k] = -1.0
            est = float(per_band[b == 1].sum())
    changed = bool(np.any(b != sbos[v]))
    sbos[v] = b
    return changed, est


def total_rates(x, y, sbos, d_min, alpha, tx_power, sig_power, noise_power,
                band_width, block=256):
    """Realized per-node rates with interference from the whole network.

    O(n^2 S), evaluated in row blocks to bound memory for city-scale runs.
    """
    n, S = sbos.shape
    if n == 0:
        return np.zeros(0)
    occupied = (sbos == 1)
    occf = occupied.astype(np.float64)
    rates = np.empty(n)
    for start in range(0, n, block):
        stop = min(start + block, n)
        dx = x[start:stop, None] - x[None, :]
        dy = y[start:stop, None] - y[None, :]
        d = np.sqrt(dx * dx + dy * dy)
        np.maximum(d, d_min, out=d)
        g = d ** -alpha
        g[np.arange(start, stop) - start, np.arange(start, stop)] = 0.0
        interference = tx_power * (g @ occf)
        per_band = band_width * np.log2(1.0 + sig_power / (noise_power + interference))
        rates[start:stop] = (per_band * occupied[start:stop]).sum(axis=1)
    return rates
