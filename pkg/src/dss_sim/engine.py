"""The spectrum-sharing dynamics: voting decisions on Poisson triggers.

Each node owns an exponential clock of rate ``clock_rate``.  When a node's
clock fires it looks at its neighbors' current sub-band occupations and

1. tallies a weighted vote per sub-band (occupied neighbors push the vote
   up, idle ones pull it down, close neighbors count more),
2. takes the *social* decision: occupy exactly the sub-bands whose vote is
   non-positive, i.e. the bands its neighborhood is not leaning on,
3. if its locally estimated datarate still misses its threshold, turns
   *selfish*: it grabs the least-contested remaining band, marks it taken,
   re-estimates, and repeats until satisfied or out of spectrum.

The engine superposes the per-node clocks into a single exponential stream
of rate ``n * clock_rate`` and picks the firing node uniformly - same law,
one random stream.  Decisions execute strictly one at a time, so two
triggers can never interleave their neighborhood reads and writes.

The greedy baseline - every node occupies everything, no cooperation - is
both the comparison scheme and the source of the default per-node datarate
thresholds.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import kernel
from .graph import InterferenceGraph
from .link import NetworkState, estimate_qos, path_gain, signal_power
from .model import (AllocationResult, NodeSet, RadioConfig, Scheme, SimConfig,
                    full_occupation, validate_config)

__all__ = [
    "TraceRecord",
    "TriggerEvent",
    "on_trigger",
    "run_dss",
    "run_greedy",
    "selfish_escalation",
    "social_decision",
    "tally_votes",
    "thresholds_from_greedy",
]

# How many (dt, node) pairs to draw from the RNG at a time.  Fixed, so a
# given seed always produces the same event sequence.
_DRAW_CHUNK = 1024


class TriggerEvent(NamedTuple):
    """One firing of a node's decision clock."""

    time: float
    node: int


class TraceRecord(NamedTuple):
    """Post-decision snapshot of the triggered node."""

    time_s: float
    node_id: int
    sbos_bits: str
    est_rate_bps: float


def sbos_bits(row) -> str:
    """Render an SBOS vector as a bitstring, '1' = occupied."""
    return "".join("1" if s == 1 else "0" for s in row)


def tally_votes(v: int, state: NetworkState) -> np.ndarray:
    """Weighted sum of neighbor occupations per sub-band, length S.

    Positive entries mean the neighborhood leans occupied on that band;
    an isolated node gets the zero vector.
    """
    ids, _, weights = state.graph.neighbors(v)
    if ids.size == 0:
        return np.zeros(state.radio.S)
    return weights @ state.sbos[ids].astype(np.float64)


def social_decision(votes) -> np.ndarray:
    """Occupy exactly the sub-bands with non-positive vote.

    A zero vote counts as unclaimed and gets occupied.
    """
    votes = np.asarray(votes, dtype=np.float64)
    return np.where(votes <= 0.0, 1, -1).astype(np.int8)


def selfish_escalation(v: int, b, votes, state: NetworkState,
                       threshold: float) -> np.ndarray:
    """Grab extra sub-bands until the estimated QoS meets ``threshold``.

    Candidates are the unoccupied bands with positive vote, cheapest
    (smallest vote) first, ties to the lowest band index; each grabbed band
    is marked taken so it is never reconsidered.  If the contested bands
    run out first, any still-unoccupied bands are taken in index order.
    Terminates after at most S steps; the final state either meets the
    threshold or occupies everything.  Returns a new SBOS row.
    """
    b = np.asarray(b, dtype=np.int8).copy()
    votes = np.asarray(votes, dtype=np.float64).copy()
    while estimate_qos(v, b, state) < threshold:
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
    return b


def on_trigger(v: int, state: NetworkState, threshold: float) -> np.ndarray:
    """Run node v's complete decision and write it into ``state.sbos``.

    Composes vote tally, social decision and selfish escalation (the same
    sequence as :func:`tally_votes` / :func:`social_decision` /
    :func:`selfish_escalation`, via the selected kernel backend).  Returns
    a copy of v's new SBOS row.
    """
    graph = state.graph
    radio = state.radio
    gains = path_gain(graph.dists, radio)
    kernel.decide_node(
        v, state.sbos, graph.indptr, graph.indices, graph.weights, gains,
        radio.P_T, signal_power(radio), radio.n0, radio.W, float(threshold))
    return state.sbos[v].copy()


def _as_thresholds(thresholds, n: int) -> np.ndarray:
    arr = np.asarray(thresholds, dtype=np.float64)
    if arr.ndim == 0:
        arr = np.full(n, float(arr))
    if arr.shape != (n,):
        raise ValueError(f"thresholds must have length {n}")
    if n and not np.all(arr >= 0):
        raise ValueError("thresholds must be non-negative")
    return arr


def run_dss(nodes: NodeSet, graph: InterferenceGraph, radio: RadioConfig,
            sim: SimConfig, thresholds, trace=None) -> AllocationResult:
    """Simulate the voting dynamics to convergence or the time horizon.

    Nodes start from ``sim.initial_occupancy`` (by default a seeded random
    half-occupancy, the uncoordinated starting point the voting then
    organizes).  The run converges once ``convergence_window`` consecutive
    triggers leave every occupation unchanged and every node has re-decided
    at least once since the last change; otherwise it stops when simulated
    time passes ``max_sim_time`` with ``converged=False``.  Reported rates
    use global-scope interference on the final occupations.

    ``trace``, if given, is a list that receives a :class:`TraceRecord` per
    executed trigger.
    """
    validate_config(radio, sim)
    n = len(nodes)
    thr = _as_thresholds(thresholds, n)
    if n == 0:
        return AllocationResult(Scheme.DSS, np.zeros((0, radio.S), np.int8),
                                np.zeros(0), np.zeros(0), 0, True)
    if graph.n != n:
        raise ValueError("graph and nodes disagree on n")
    rng = np.random.default_rng(sim.seed)
    if sim.initial_occupancy == "full":
        sbos = full_occupation(n, radio.S)
    elif sim.initial_occupancy == "random":
        sbos = rng.choice(np.array([-1, 1], dtype=np.int8), size=(n, radio.S))
    else:
        sbos = np.full((n, radio.S), -1, dtype=np.int8)
    gains = path_gain(graph.dists, radio)
    sig = signal_power(radio)
    n0 = radio.n0
    window = sim.convergence_window if sim.convergence_window is not None else 3 * n
    t_max = sim.max_sim_time if sim.max_sim_time is not None else 50.0 / sim.clock_rate
    event_rate = n * sim.clock_rate

    indptr, indices, weights = graph.indptr, graph.indices, graph.weights
    # Convergence needs more than a quiet streak: a node that never re-decided
    # after the last change could still be off its fixed point.  Nodes are
    # counted per epoch (epochs advance on every change); the run is converged
    # only when the quiet streak is long enough AND the current epoch has seen
    # all n nodes decide as a no-op.  The changing node itself counts for the
    # new epoch: its decision depends only on neighbor states, so repeating it
    # immediately would be a no-op by construction.
    seen_epoch = np.full(n, -1, dtype=np.int64)
    epoch = 0
    covered = 0
    t = 0.0
    triggers = 0
    quiet = 0
    converged = False
    running = True
    while running:
        dts = rng.exponential(1.0 / event_rate, size=_DRAW_CHUNK)
        picks = rng.integers(0, n, size=_DRAW_CHUNK)
        for i in range(_DRAW_CHUNK):
            t += dts[i]
            if t > t_max:
                running = False
                break
            v = int(picks[i])
            changed, est = kernel.decide_node(
                v, sbos, indptr, indices, weights, gains,
                radio.P_T, sig, n0, radio.W, float(thr[v]))
            triggers += 1
            if changed:
                epoch += 1
                covered = 1
                seen_epoch[v] = epoch
                quiet = 0
            else:
                if seen_epoch[v] != epoch:
                    seen_epoch[v] = epoch
                    covered += 1
                quiet += 1
            if trace is not None:
                trace.append(TraceRecord(t, v, sbos_bits(sbos[v]), est))
            if quiet >= window and covered == n:
                converged = True
                running = False
                break
    rates = _global_rates(nodes, sbos, radio)
    return AllocationResult(Scheme.DSS, sbos, rates,
                            rates / radio.total_bandwidth, triggers, converged)


def run_greedy(nodes: NodeSet, graph: InterferenceGraph,
               radio: RadioConfig) -> AllocationResult:
    """The non-cooperative baseline: everyone occupies every sub-band."""
    n = len(nodes)
    sbos = full_occupation(n, radio.S)
    rates = _global_rates(nodes, sbos, radio)
    return AllocationResult(Scheme.GREEDY, sbos, rates,
                            rates / radio.total_bandwidth, 0, True)


def _global_rates(nodes: NodeSet, sbos: np.ndarray,
                  radio: RadioConfig) -> np.ndarray:
    x = np.ascontiguousarray(nodes.xy[:, 0])
    y = np.ascontiguousarray(nodes.xy[:, 1])
    return kernel.total_rates(x, y, sbos, radio.d_min, radio.alpha,
                              radio.P_T, signal_power(radio), radio.n0,
                              radio.W)


def thresholds_from_greedy(greedy: AllocationResult,
                           factor: float = 1.0) -> np.ndarray:
    """Per-node datarate thresholds: each node's greedy rate times ``factor``."""
    if greedy.scheme is not Scheme.GREEDY:
        raise ValueError("thresholds come from a greedy result")
    if factor < 0:
        raise ValueError("factor must be >= 0")
    return greedy.rate_per_node * factor
