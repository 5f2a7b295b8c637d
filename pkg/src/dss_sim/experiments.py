"""Experiment pipelines: density sweeps, city grids, single-network drills.

Every pipeline runs the same scheme pair on every network it touches:
greedy first (which also yields the per-node datarate thresholds), then
the voting dynamics, then the metric bundle for both.  Replications and
cells get their own random streams derived from the master seed, so whole
experiments are reproducible bit for bit from one integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .deploy import (DatasetError, Region, generate_ppp, generate_uniform,
                     ingest_ap_csv, nearest_neighbor_distances, partition_grid)
from .engine import run_dss, run_greedy, thresholds_from_greedy
from .graph import InterferenceGraph, build_graph
from .metrics import MetricReport, improvement, summarize
from .model import (AllocationResult, ConfigError, NodeSet, RadioConfig,
                    Scheme, SimConfig)

__all__ = [
    "CellResult",
    "GeoAnalysis",
    "PairResult",
    "SampleResult",
    "SweepRow",
    "SweepSpec",
    "run_geo_analysis",
    "run_sample_network",
    "run_scheme_pair",
    "run_synthetic_sweep",
]


def derive_seed(*parts) -> int:
    """Stable 64-bit child seed from a tuple of integers."""
    ss = np.random.SeedSequence([int(p) for p in parts])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class PairResult:
    """Greedy and voting outcomes for one network."""

    nodes: NodeSet
    graph: InterferenceGraph
    greedy: AllocationResult
    dss: AllocationResult
    greedy_report: MetricReport | None
    dss_report: MetricReport | None
    improvements: dict | None


def run_scheme_pair(nodes: NodeSet, radio: RadioConfig, sim: SimConfig,
                    area_km2: float, threshold_factor: float = 1.0,
                    ccdf_thresholds=None, trace=None) -> PairResult:
    """Greedy baseline, thresholds, voting run, metrics - in that order."""
    graph = build_graph(nodes, sim.R_N, radio)
    greedy = run_greedy(nodes, graph, radio)
    thresholds = thresholds_from_greedy(greedy, threshold_factor)
    dss = run_dss(nodes, graph, radio, sim, thresholds, trace=trace)
    greedy_report = summarize(greedy, area_km2, radio, ccdf_thresholds)
    dss_report = summarize(dss, area_km2, radio, ccdf_thresholds)
    improvements = (improvement(dss_report, greedy_report)
                    if greedy_report is not None else None)
    return PairResult(nodes, graph, greedy, dss, greedy_report, dss_report,
                      improvements)


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep and how hard.

    With ``node_counts`` empty, each grid point is (density, R_N) over a
    fixed square of ``area_km2`` and deployments are Poisson.  With
    ``node_counts`` given, each point additionally fixes the node count
    exactly and the square's area becomes ``count / density`` so density
    stays constant across sizes.
    """

    densities: tuple = (25.0, 125.0, 250.0, 375.0, 500.0, 625.0)
    radii: tuple = (50.0, 150.0, 300.0)
    node_counts: tuple = ()
    replications: int = 20
    area_km2: float = 1.0
    threshold_factor: float = 1.0
    radio: RadioConfig = field(default_factory=RadioConfig)
    sim: SimConfig = field(default_factory=SimConfig)
    master_seed: int = 0

    def __post_init__(self):
        if not self.densities:
            raise ConfigError(["densities must be non-empty"])
        if not self.radii:
            raise ConfigError(["radii must be non-empty"])
        if any(d < 0 for d in self.densities):
            raise ConfigError(["densities must be >= 0"])
        if any(r <= 0 for r in self.radii):
            raise ConfigError(["radii must be > 0"])
        if any(int(c) < 1 for c in self.node_counts):
            raise ConfigError(["node_counts must be >= 1"])
        if self.replications < 1:
            raise ConfigError(["replications must be >= 1"])
        if not self.area_km2 > 0:
            raise ConfigError(["area_km2 must be > 0"])

    @classmethod
    def from_mapping(cls, mapping, radio: RadioConfig, sim: SimConfig,
                     master_seed: int) -> "SweepSpec":
        """Build from a config file's ``sweep`` section."""
        known = {"densities", "radii", "node_counts", "replications",
                 "area_km2", "threshold_factor"}
        unknown = sorted(set(mapping) - known)
        if unknown:
            raise ConfigError([f"unknown sweep key: {k}" for k in unknown])
        kwargs = {}
        for key in ("densities", "radii", "node_counts"):
            if key in mapping:
                kwargs[key] = tuple(mapping[key])
        if "replications" in mapping:
            kwargs["replications"] = int(mapping["replications"])
        if "area_km2" in mapping:
            kwargs["area_km2"] = float(mapping["area_km2"])
        if "threshold_factor" in mapping:
            kwargs["threshold_factor"] = float(mapping["threshold_factor"])
        return cls(radio=radio, sim=sim, master_seed=master_seed, **kwargs)

    def points(self) -> list[tuple[float, float, int | None]]:
        """The (density, R_N, node_count) grid in deterministic order."""
        out = []
        for lam in self.densities:
            for rn in self.radii:
                if self.node_counts:
                    for count in self.node_counts:
                        out.append((float(lam), float(rn), int(count)))
                else:
                    out.append((float(lam), float(rn), None))
        return out


@dataclass(frozen=True)
class SweepRow:
    """One scheme's metrics for one replication of one grid point."""

    density_per_km2: float
    rn_m: float
    target_nodes: int | None
    replication: int
    scheme: Scheme
    n_nodes: int
    report: MetricReport | None
    converged: bool
    triggers: int


def run_synthetic_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Run the whole sweep; two rows (greedy, dss) per replication.

    A replication whose Poisson draw comes up empty is recorded with null
    metrics rather than aborting the sweep.
    """
    rows = []
    for point_index, (lam, rn, count) in enumerate(spec.points()):
        if count is not None:
            area = count / lam if lam > 0 else spec.area_km2
        else:
            area = spec.area_km2
        side = float(np.sqrt(area) * 1000.0)
        region = Region(side, side)
        sim = replace(spec.sim, R_N=rn)
        for rep in range(spec.replications):
            deploy_seed = derive_seed(spec.master_seed, point_index, rep, 0)
            engine_seed = derive_seed(spec.master_seed, point_index, rep, 1)
            if count is not None:
                nodes = generate_uniform(count, region, deploy_seed)
            else:
                nodes = generate_ppp(lam, region, deploy_seed)
            pair = run_scheme_pair(nodes, spec.radio,
                                   replace(sim, seed=engine_seed), area,
                                   spec.threshold_factor)
            for scheme, result, report in (
                    (Scheme.GREEDY, pair.greedy, pair.greedy_report),
                    (Scheme.DSS, pair.dss, pair.dss_report)):
                rows.append(SweepRow(lam, rn, count, rep, scheme, len(nodes),
                                     report, result.converged,
                                     result.triggers_executed))
    return rows


@dataclass(frozen=True)
class CellResult:
    """Scheme comparison inside one grid cell."""

    row: int
    col: int
    node_count: int
    mean_nn_distance_m: float | None
    greedy: MetricReport | None
    dss: MetricReport | None
    improvements: dict | None
    dss_converged: bool | None
    dss_triggers: int | None


@dataclass(frozen=True)
class GeoAnalysis:
    """A full dataset partitioned and analyzed cell by cell."""

    nodes: NodeSet
    rows: int
    cols: int
    cells: list[CellResult]


def run_geo_analysis(dataset_path, rows: int, cols: int, radio: RadioConfig,
                     sim: SimConfig, mode: str = "lonlat", origin=None,
                     master_seed=None,
                     threshold_factor: float = 1.0) -> GeoAnalysis:
    """Ingest a dataset, cut it into a grid, compare schemes per cell.

    Cells are simulated independently (interference does not cross cell
    boundaries).  Empty cells appear in the output with null metrics;
    single-node cells run trivially.  Cell seeds derive from the master
    seed (default: ``sim.seed``) and the cell's (row, col).
    """
    nodes = ingest_ap_csv(dataset_path, mode=mode, origin=origin)
    if len(nodes) == 0:
        raise DatasetError(f"{dataset_path}: dataset has no nodes")
    cells = partition_grid(nodes, rows, cols)
    base_seed = sim.seed if master_seed is None else master_seed
    out = []
    for cell in cells:
        if cell.node_ids.size == 0:
            out.append(CellResult(cell.row, cell.col, 0, None, None, None,
                                  None, None, None))
            continue
        sub = nodes.subset(cell.node_ids)
        nn = (float(nearest_neighbor_distances(sub).mean())
              if len(sub) >= 2 else None)
        cell_sim = replace(sim, seed=derive_seed(base_seed, cell.row, cell.col))
        pair = run_scheme_pair(sub, radio, cell_sim, cell.bounds.area_km2,
                               threshold_factor)
        out.append(CellResult(cell.row, cell.col, len(sub), nn,
                              pair.greedy_report, pair.dss_report,
                              pair.improvements, pair.dss.converged,
                              pair.dss.triggers_executed))
    return GeoAnalysis(nodes, rows, cols, out)


@dataclass(frozen=True)
class SampleResult:
    """Deep-dive on one selected network."""

    nodes: NodeSet
    pair: PairResult
    ccdf_thresholds: np.ndarray
    cell: tuple[int, int] | None
    area_km2: float


def _bbox_area_km2(nodes: NodeSet) -> float:
    xy = nodes.xy
    sx = float(xy[:, 0].max() - xy[:, 0].min()) or 1e-9
    sy = float(xy[:, 1].max() - xy[:, 1].min()) or 1e-9
    return sx * sy / 1e6


def run_sample_network(dataset_path, radio: RadioConfig, sim: SimConfig,
                       mode: str = "lonlat", origin=None, grid=None,
                       cell=None, ids=None, master_seed=None,
                       threshold_factor: float = 1.0,
                       trace=None) -> SampleResult:
    """Analyze one network selected from a dataset.

    Selection is either ``cell=(row, col)`` of a ``grid=(rows, cols)``
    partition, an explicit ``ids`` list, or - with neither - the whole
    dataset.  The whole-dataset form is field-for-field identical to a 1x1
    :func:`run_geo_analysis`.  A selector matching no nodes is an error.
    """
    nodes_all = ingest_ap_csv(dataset_path, mode=mode, origin=origin)
    if len(nodes_all) == 0:
        raise DatasetError(f"{dataset_path}: dataset has no nodes")
    base_seed = sim.seed if master_seed is None else master_seed
    if cell is not None and ids is not None:
        raise ValueError("choose either a cell or an id list, not both")
    if cell is not None:
        rows, cols = grid if grid is not None else (50, 50)
        r, c = int(cell[0]), int(cell[1])
        cells = partition_grid(nodes_all, rows, cols)
        match = [g for g in cells if g.row == r and g.col == c]
        if not match:
            raise ValueError(f"cell ({r}, {c}) outside the {rows}x{cols} grid")
        node_ids = match[0].node_ids
        if node_ids.size == 0:
            raise ValueError(f"cell ({r}, {c}) contains no nodes")
        sub = nodes_all.subset(node_ids)
        area = match[0].bounds.area_km2
        key = (r, c)
    elif ids is not None:
        id_arr = np.asarray(list(ids), dtype=np.int64)
        if id_arr.size == 0:
            raise ValueError("id selection matched no nodes")
        sub = nodes_all.subset(id_arr)
        area = _bbox_area_km2(sub)
        key = (0, 0)
    else:
        sub = nodes_all
        area = _bbox_area_km2(sub)
        key = (0, 0)
    sel_sim = replace(sim, seed=derive_seed(base_seed, key[0], key[1]))
    # Thresholds for the CCDF grid come after rates exist, so run the pair
    # first without a CCDF, then attach one over both schemes' rate range.
    pair = run_scheme_pair(sub, radio, sel_sim, area, threshold_factor,
                           trace=trace)
    top = max(float(pair.greedy.rate_per_node.max(initial=0.0)),
              float(pair.dss.rate_per_node.max(initial=0.0)))
    ccdf_thresholds = np.linspace(0.0, 1.02 * top if top > 0 else 1.0, 41)
    greedy_report = summarize(pair.greedy, area, radio, ccdf_thresholds)
    dss_report = summarize(pair.dss, area, radio, ccdf_thresholds)
    pair = replace(pair, greedy_report=greedy_report, dss_report=dss_report)
    return SampleResult(sub, pair, ccdf_thresholds,
                        cell if cell is None else (int(cell[0]), int(cell[1])),
                        area)
