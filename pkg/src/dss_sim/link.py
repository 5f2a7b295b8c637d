"""Downlink link budget: path gain, SINR, and per-node datarates.

Every AP serves a reference user at distance ``d_ref`` with power ``P_T``.
Interference on sub-band k comes from other APs currently occupying k,
attenuated by the same ``max(d, d_min) ** -alpha`` law; distances are
AP-to-AP.  Two interference scopes exist:

* ``Scope.LOCAL`` - only graph neighbors interfere.  This is the partial
  knowledge a node has when estimating its own QoS during a decision.
* ``Scope.GLOBAL`` - every node in the network interferes.  This is what
  the network actually delivers and what all reported metrics use.

Per-band rate is Shannon capacity ``W * log2(1 + SINR)``; a node's rate is
the sum over its occupied sub-bands.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import InterferenceGraph
from .model import RadioConfig

__all__ = [
    "NetworkState",
    "Scope",
    "estimate_qos",
    "node_rate",
    "path_gain",
    "signal_power",
    "sinr",
    "spectral_efficiency",
]


class Scope(Enum):
    """Which transmitters count as interferers."""

    LOCAL = "local"
    GLOBAL = "global"


@dataclass(frozen=True)
class NetworkState:
    """Snapshot of a network mid-simulation.

    ``sbos`` is the ``(n, S)`` occupation matrix.  ``xy`` carries node
    positions so global-scope interference can reach beyond the graph.
    Treat a state as immutable during any single computation; only the
    engine's trigger handler writes to ``sbos``.
    """

    xy: np.ndarray
    sbos: np.ndarray
    graph: InterferenceGraph
    radio: RadioConfig


def path_gain(d, radio: RadioConfig):
    """Power-law channel gain at distance ``d`` metres (scalar or array)."""
    d = np.maximum(np.asarray(d, dtype=np.float64), radio.d_min)
    return d ** -radio.alpha


def signal_power(radio: RadioConfig) -> float:
    """Received power at the reference served user, ``P_T * g(d_ref)``."""
    return radio.P_T * float(path_gain(radio.d_ref, radio))


def band_interference(v: int, state: NetworkState, scope: Scope) -> np.ndarray:
    """Interference power hitting v's user on each sub-band, length S."""
    radio = state.radio
    if scope is Scope.LOCAL:
        ids, dists, _ = state.graph.neighbors(v)
        if ids.size == 0:
            return np.zeros(radio.S)
        gains = path_gain(dists, radio)
    else:
        n = state.xy.shape[0]
        ids = np.arange(n)
        ids = ids[ids != v]
        if ids.size == 0:
            return np.zeros(radio.S)
        dx = state.xy[ids, 0] - state.xy[v, 0]
        dy = state.xy[ids, 1] - state.xy[v, 1]
        gains = path_gain(np.sqrt(dx * dx + dy * dy), radio)
    occupied = (state.sbos[ids] == 1)
    return radio.P_T * (gains @ occupied)


def sinr(v: int, k: int, state: NetworkState, scope: Scope = Scope.GLOBAL) -> float:
    """SINR of v's reference user on sub-band k."""
    interference = band_interference(v, state, scope)[k]
    return signal_power(state.radio) / (state.radio.n0 + interference)


def node_rate(v: int, b, state: NetworkState, scope: Scope = Scope.GLOBAL) -> float:
    """Datarate v would get with candidate occupation ``b`` [bits/s].

    ``b`` replaces v's own row; everyone else transmits according to
    ``state.sbos``.  Only occupied sub-bands contribute.
    """
    b = np.asarray(b)
    radio = state.radio
    interference = band_interference(v, state, scope)
    per_band = radio.W * np.log2(1.0 + signal_power(radio) / (radio.n0 + interference))
    return float(per_band[b == 1].sum())


def estimate_qos(v: int, b, state: NetworkState) -> float:
    """The rate v believes ``b`` would deliver, from neighbors only.

    This is the quantity nodes compare against their datarate threshold
    while deciding; it ignores interferers outside the neighborhood, so it
    upper-bounds the realized (global-scope) rate.
    """
    return node_rate(v, b, state, Scope.LOCAL)


def spectral_efficiency(rate, radio: RadioConfig):
    """Rate normalized by total bandwidth, ``rate / (S * W)`` [bits/s/Hz]."""
    return np.asarray(rate, dtype=np.float64) / radio.total_bandwidth
