"""Compare the compiled and pure-Python kernels on realistic workloads.

Usage::

    python3 benchmarks/bench_kernel.py [--triggers N] [--seed K]

Times the two hot paths - single-node occupation decisions and
whole-network rate evaluation - on deployments of a few sizes, and prints
triggers/second, evaluations/second, and the compiled-over-pure speedup.
"""

import argparse
import time

import numpy as np

from dss_sim import _kernel_py
from dss_sim.graph import build_graph
from dss_sim.link import path_gain, signal_power
from dss_sim.model import NodeSet, RadioConfig

try:
    from dss_sim import _speedups
except ImportError:
    _speedups = None


def make_network(n, side_m, r_n, seed):
    radio = RadioConfig()
    rng = np.random.default_rng(seed)
    xy = rng.uniform(0.0, side_m, size=(n, 2))
    graph = build_graph(NodeSet(xy), r_n, radio)
    sbos = rng.choice(np.array([-1, 1], dtype=np.int8), size=(n, radio.S))
    return xy, graph, radio, sbos


def time_decisions(impl, graph, radio, sbos, picks, thresholds):
    gains = path_gain(graph.dists, radio)
    sig = signal_power(radio)
    work = sbos.copy()
    t0 = time.perf_counter()
    for v, thr in zip(picks, thresholds):
        impl.decide_node(v, work, graph.indptr, graph.indices,
                         graph.weights, gains, radio.P_T, sig, radio.n0,
                         radio.W, thr)
    return time.perf_counter() - t0


def time_rates(impl, xy, radio, sbos, repeat):
    x = np.ascontiguousarray(xy[:, 0])
    y = np.ascontiguousarray(xy[:, 1])
    t0 = time.perf_counter()
    for _ in range(repeat):
        impl.total_rates(x, y, sbos, radio.d_min, radio.alpha, radio.P_T,
                         signal_power(radio), radio.n0, radio.W)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--triggers", type=int, default=20_000,
                        help="decisions to time per network (default 20000)")
    parser.add_argument("--rate-evals", type=int, default=50,
                        help="whole-network rate evaluations (default 50)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _speedups is None:
        print("note: compiled extension not built; timing the fallback only")
    backends = [("python", _kernel_py)]
    if _speedups is not None:
        backends.insert(0, ("compiled", _speedups))

    networks = [(100, 400.0), (400, 800.0), (1000, 1265.0)]
    print(f"{'n':>5} {'deg':>5}  {'backend':<8} {'ktrig/s':>9} "
          f"{'rate-evals/s':>13}")
    for n, side in networks:
        xy, graph, radio, sbos = make_network(n, side, 150.0, args.seed)
        rng = np.random.default_rng(args.seed + 1)
        picks = rng.integers(0, n, size=args.triggers)
        thresholds = rng.uniform(0.0, 2e9, size=args.triggers)
        deg = graph.indices.size / n
        times = {}
        for name, impl in backends:
            dt = time_decisions(impl, graph, radio, sbos, picks, thresholds)
            rt = time_rates(impl, xy, radio, sbos, args.rate_evals)
            times[name] = (dt, rt)
            print(f"{n:>5} {deg:>5.1f}  {name:<8} "
                  f"{args.triggers / dt / 1e3:>9.1f} "
                  f"{args.rate_evals / rt:>13.1f}")
        if len(times) == 2:
            dpy, rpy = times["python"]
            dcy, rcy = times["compiled"]
            print(f"{'':>5} {'':>5}  speedup   {dpy / dcy:>8.1f}x "
                  f"{rpy / rcy:>12.1f}x")


if __name__ == "__main__":
    main()
