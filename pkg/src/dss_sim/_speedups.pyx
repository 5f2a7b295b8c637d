# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled decision and rate kernels.

Semantics must match ``_kernel_py`` exactly; that module is the readable
reference for what happens here.  Per-band quantities are recomputed from
scratch (ascending band order) at every escalation step so both backends
agree to rounding error even on threshold-boundary cases.
"""

from libc.math cimport log2, pow, sqrt
from libc.stdlib cimport free, malloc

import numpy as np

BACKEND = "compiled"


cdef inline double _occupied_rate(const signed char *b, const double *per_band,
                                  Py_ssize_t S) nogil:
    cdef double total = 0.0
    cdef Py_ssize_t k
    for k in range(S):
        if b[k] == 1:
            total += per_band[k]
    return total


def decide_node(Py_ssize_t v,
                signed char[:, ::1] sbos,
                const long long[::1] indptr,
                const long long[::1] indices,
                const double[::1] weights,
                const double[::1] gains,
                double tx_power,
                double sig_power,
                double noise_power,
                double band_width,
                double threshold):
    """See ``_kernel_py.decide_node``."""
    cdef Py_ssize_t S = sbos.shape[1]
    cdef Py_ssize_t lo = indptr[v]
    cdef Py_ssize_t hi = indptr[v + 1]
    cdef double *votes = <double *> malloc(S * sizeof(double))
    cdef double *per_band = <double *> malloc(S * sizeof(double))
    cdef signed char *b = <signed char *> malloc(S * sizeof(signed char))
    if votes == NULL or per_band == NULL or b == NULL:
        free(votes); free(per_band); free(b)
        raise MemoryError()
    cdef Py_ssize_t j, k, u
    cdef double w, g, est, best_vote
    cdef Py_ssize_t pick, first_open
    cdef signed char s
    cdef bint changed
    try:
        for k in range(S):
            votes[k] = 0.0
            per_band[k] = 0.0  # accumulates occupiers' gains first
        for j in range(lo, hi):
            u = indices[j]
            w = weights[j]
            g = gains[j]
            for k in range(S):
                s = sbos[u, k]
                votes[k] += w * s
                if s == 1:
                    per_band[k] += g
        for k in range(S):
            per_band[k] = band_width * log2(
                1.0 + sig_power / (noise_power + tx_power * per_band[k]))
        for k in range(S):
            b[k] = 1 if votes[k] <= 0.0 else -1
        est = _occupied_rate(b, per_band, S)
        while est < threshold:
            pick = -1
            first_open = -1
            best_vote = 0.0
            for k in range(S):
                if b[k] == -1:
                    if first_open < 0:
                        first_open = k
                    if votes[k] > 0.0 and (pick < 0 or votes[k] < best_vote):
                        best_vote = votes[k]
                        pick = k
            if first_open < 0:
                break
            if pick < 0:
                pick = first_open
            b[pick] = 1
            votes[pick] = -1.0
            est = _occupied_rate(b, per_band, S)
        changed = False
        for k in range(S):
            if sbos[v, k] != b[k]:
                changed = True
                sbos[v, k] = b[k]
        return bool(changed), est
    finally:
        free(votes)
        free(per_band)
        free(b)


def total_rates(const double[::1] x,
                const double[::1] y,
                const signed char[:, ::1] sbos,
                double d_min,
                double alpha,
                double tx_power,
                double sig_power,
                double noise_power,
                double band_width):
    """See ``_kernel_py.total_rates``."""
    cdef Py_ssize_t n = sbos.shape[0]
    cdef Py_ssize_t S = sbos.shape[1]
    out = np.zeros(n)
    if n == 0:
        return out
    cdef double[::1] rates = out
    cdef double *intf = <double *> malloc(S * sizeof(double))
    if intf == NULL:
        raise MemoryError()
    cdef Py_ssize_t v, u, k
    cdef double dx, dy, d, g, total
    cdef bint fourth = (alpha == 4.0)
    cdef double d_min2 = d_min * d_min
    try:
        with nogil:
            for v in range(n):
                for k in range(S):
                    intf[k] = 0.0
                for u in range(n):
                    if u == v:
                        continue
                    dx = x[u] - x[v]
                    dy = y[u] - y[v]
                    d = dx * dx + dy * dy
                    if fourth:
                        # max(d, d_min)^-4 == max(d^2, d_min^2)^-2
                        if d < d_min2:
                            d = d_min2
                        g = 1.0 / (d * d)
                    else:
                        d = sqrt(d)
                        if d < d_min:
                            d = d_min
                        g = pow(d, -alpha)
                    for k in range(S):
                        if sbos[u, k] == 1:
                            intf[k] += g
                total = 0.0
                for k in range(S):
                    if sbos[v, k] == 1:
                        total += band_width * log2(
                            1.0 + sig_power / (noise_power + tx_power * intf[k]))
                rates[v] = total
    finally:
        free(intf)
    return out
