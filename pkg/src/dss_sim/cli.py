"""Command-line front end.

Subcommands:

* ``sweep``    - synthetic density / neighborhood-radius sweep -> sweep.csv
* ``geo``      - grid analysis of a real AP dataset -> cells.csv
* ``sample``   - deep-dive on one cell / id list / whole dataset ->
                 sample_rates.csv, edges.csv (and trace.csv with --trace)
* ``validate`` - check a config file (and optionally a dataset) and exit

Every subcommand also writes a ``summary.json``.  All outputs are plain
CSV/JSON, deterministic byte for byte for a given seed.  Failures print a
machine-readable JSON object on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, replace
from pathlib import Path

from . import kernel
from .deploy import DatasetError, ingest_ap_csv
from .experiments import (SweepSpec, run_geo_analysis, run_sample_network,
                          run_synthetic_sweep)
from .graph import save_edges_csv
from .metrics import report_csv_fields, report_csv_values, report_to_dict
from .model import ConfigError, RadioConfig, SimConfig, load_config

__all__ = ["main"]


def _fmt(value):
    """CSV cell rendering: shortest-round-trip floats, blank for None."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def _load_config(args, extra_sections=()):
    if getattr(args, "config", None):
        radio, sim, extras = load_config(args.config,
                                         extra_sections=extra_sections)
    else:
        radio, sim, extras = RadioConfig(), SimConfig(), {}
    if getattr(args, "seed", None) is not None:
        sim = replace(sim, seed=args.seed)
    return radio, sim, extras


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _config_dict(radio, sim) -> dict:
    return {"radio": asdict(radio), "sim": asdict(sim),
            "kernel_backend": kernel.BACKEND}


def _cmd_sweep(args) -> int:
    radio, sim, extras = _load_config(args, extra_sections=("sweep",))
    spec = SweepSpec.from_mapping(extras.get("sweep", {}), radio, sim,
                                  sim.seed)
    rows = run_synthetic_sweep(spec)
    out = _out_dir(args)
    header = ["density_per_km2", "rn_m", "target_nodes", "replication",
              "scheme", "n_nodes"] + report_csv_fields() + ["converged",
                                                            "triggers"]
    _write_csv(out / "sweep.csv", header,
               [[r.density_per_km2, r.rn_m, r.target_nodes, r.replication,
                 r.scheme.value, r.n_nodes] + report_csv_values(r.report)
                + [r.converged, r.triggers] for r in rows])

    # Replication-averaged comparison per grid point.
    points = {}
    for r in rows:
        key = (r.density_per_km2, r.rn_m, r.target_nodes)
        points.setdefault(key, {}).setdefault(r.scheme.value, []).append(r)
    grid_summary = []
    for (lam, rn, count), by_scheme in points.items():
        entry = {"density_per_km2": lam, "rn_m": rn, "target_nodes": count}
        for scheme, scheme_rows in by_scheme.items():
            reports = [r.report for r in scheme_rows if r.report is not None]
            if reports:
                entry[scheme] = {
                    "mean_rate_bps": _mean([p.mean_rate_bps for p in reports]),
                    "fairness_index": _mean([p.fairness_index for p in reports]),
                    "ase_bps_per_hz_per_km2": _mean(
                        [p.ase_bps_per_hz_per_km2 for p in reports]),
                }
            else:
                entry[scheme] = None
        grid_summary.append(entry)
    _write_json(out / "summary.json", {
        "command": "sweep",
        "config": _config_dict(radio, sim),
        "replications": spec.replications,
        "master_seed": spec.master_seed,
        "grid": grid_summary,
    })
    return 0


def _mean(values):
    return sum(values) / len(values) if values else None


def _cmd_geo(args) -> int:
    radio, sim, _ = _load_config(args)
    analysis = run_geo_analysis(args.dataset, args.rows, args.cols, radio,
                                sim, mode=args.mode, origin=args.origin)
    out = _out_dir(args)
    header = (["row", "col", "node_count", "mean_nn_distance_m"]
              + ["greedy_" + f for f in report_csv_fields()]
              + ["dss_" + f for f in report_csv_fields()]
              + ["rate_improvement_pct", "fairness_improvement_pct",
                 "fairness_improvement_abs", "se_improvement_pct",
                 "ase_improvement_pct", "dss_converged", "dss_triggers"])
    rows = []
    for c in analysis.cells:
        imp = c.improvements or {}
        rows.append([c.row, c.col, c.node_count, c.mean_nn_distance_m]
                    + report_csv_values(c.greedy) + report_csv_values(c.dss)
                    + [imp.get("mean_rate_pct"), imp.get("fairness_pct"),
                       imp.get("fairness_abs"), imp.get("mean_se_pct"),
                       imp.get("ase_pct"), c.dss_converged, c.dss_triggers])
    _write_csv(out / "cells.csv", header, rows)

    occupied = [c for c in analysis.cells if c.node_count > 0]
    compared = [c for c in occupied if c.improvements is not None]
    summary = {
        "command": "geo",
        "config": _config_dict(radio, sim),
        "dataset": str(args.dataset),
        "grid": {"rows": analysis.rows, "cols": analysis.cols},
        "node_count": len(analysis.nodes),
        "cells_total": len(analysis.cells),
        "cells_occupied": len(occupied),
        "mean_cell_improvements": {
            "mean_rate_pct": _mean([c.improvements["mean_rate_pct"]
                                    for c in compared
                                    if c.improvements["mean_rate_pct"]
                                    is not None]),
            "ase_pct": _mean([c.improvements["ase_pct"] for c in compared
                              if c.improvements["ase_pct"] is not None]),
            "fairness_abs": _mean([c.improvements["fairness_abs"]
                                   for c in compared]),
        },
    }
    _write_json(out / "summary.json", summary)
    return 0


def _cmd_sample(args) -> int:
    radio, sim, _ = _load_config(args)
    cell = None
    grid = None
    ids = None
    if args.cell is not None:
        cell = tuple(int(p) for p in args.cell.split(","))
        if len(cell) != 2:
            raise ConfigError(["--cell must be ROW,COL"])
        grid = (args.rows, args.cols)
    if args.ids is not None:
        ids = [int(p) for p in args.ids.split(",") if p.strip() != ""]
    trace = [] if args.trace else None
    result = run_sample_network(args.dataset, radio, sim, mode=args.mode,
                                origin=args.origin, grid=grid, cell=cell,
                                ids=ids, trace=trace)
    out = _out_dir(args)
    pair = result.pair
    rows = []
    for node in result.nodes:
        g = float(pair.greedy.rate_per_node[node.id])
        d = float(pair.dss.rate_per_node[node.id])
        rows.append([node.id, node.x, node.y, g, d,
                     float(pair.greedy.se_per_node[node.id]),
                     float(pair.dss.se_per_node[node.id]),
                     (100.0 * (d - g) / g) if g else None])
    _write_csv(out / "sample_rates.csv",
               ["node_id", "x_m", "y_m", "greedy_rate_bps", "dss_rate_bps",
                "greedy_se_bps_per_hz", "dss_se_bps_per_hz",
                "rate_improvement_pct"], rows)
    save_edges_csv(pair.graph, out / "edges.csv")
    if trace is not None:
        _write_csv(out / "trace.csv",
                   ["time_s", "node_id", "sbos_bits", "estimated_rate_bps"],
                   [[t.time_s, t.node_id, t.sbos_bits, t.est_rate_bps]
                    for t in trace])
    summary = {
        "command": "sample",
        "config": _config_dict(radio, sim),
        "dataset": str(args.dataset),
        "selection": ({"cell": list(result.cell), "rows": grid[0],
                       "cols": grid[1]} if result.cell is not None
                      else {"ids": ids} if ids is not None
                      else {"whole_dataset": True}),
        "node_count": len(result.nodes),
        "area_km2": result.area_km2,
        "edges": pair.graph.num_edges,
        "greedy": report_to_dict(pair.greedy_report),
        "dss": report_to_dict(pair.dss_report),
        "improvements": pair.improvements,
        "dss_converged": pair.dss.converged,
        "dss_triggers": pair.dss.triggers_executed,
    }
    _write_json(out / "summary.json", summary)
    return 0


def _cmd_validate(args) -> int:
    report = {"valid": True}
    radio, sim, _ = _load_config(args, extra_sections=("sweep",))
    report["config"] = _config_dict(radio, sim)
    if args.dataset:
        nodes = ingest_ap_csv(args.dataset, mode=args.mode)
        report["dataset"] = {"path": str(args.dataset), "nodes": len(nodes)}
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def _parse_origin(value):
    if value is None:
        return None
    parts = value.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("origin must be LON,LAT")
    return (float(parts[0]), float(parts[1]))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dss-sim",
        description="Democratic spectrum sharing simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dataset=False, out=True):
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--seed", type=int, default=None,
                       help="override the configured seed")
        if dataset:
            p.add_argument("--dataset", required=True,
                           help="AP dataset CSV (id plus two coordinates)")
            p.add_argument("--mode", choices=("lonlat", "xy"),
                           default="lonlat", help="dataset coordinate mode")
            p.add_argument("--origin", type=_parse_origin, default=None,
                           help="projection origin LON,LAT (default: centroid)")
        if out:
            p.add_argument("--out", required=True, help="output directory")

    p_sweep = sub.add_parser("sweep", help="synthetic density sweep")
    common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_geo = sub.add_parser("geo", help="grid analysis of an AP dataset")
    common(p_geo, dataset=True)
    p_geo.add_argument("--rows", type=int, default=50)
    p_geo.add_argument("--cols", type=int, default=50)
    p_geo.set_defaults(func=_cmd_geo)

    p_sample = sub.add_parser("sample", help="analyze one selected network")
    common(p_sample, dataset=True)
    p_sample.add_argument("--cell", default=None,
                          help="grid cell ROW,COL to select")
    p_sample.add_argument("--rows", type=int, default=50,
                          help="grid rows for --cell")
    p_sample.add_argument("--cols", type=int, default=50,
                          help="grid cols for --cell")
    p_sample.add_argument("--ids", default=None,
                          help="comma-separated node ids to select")
    p_sample.add_argument("--trace", action="store_true",
                          help="write a per-trigger trace.csv")
    p_sample.set_defaults(func=_cmd_sample)

    p_val = sub.add_parser("validate", help="validate config and dataset")
    p_val.add_argument("--config", help="JSON configuration file")
    p_val.add_argument("--seed", type=int, default=None)
    p_val.add_argument("--dataset", default=None)
    p_val.add_argument("--mode", choices=("lonlat", "xy"), default="lonlat")
    p_val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DatasetError, ValueError, OSError) as exc:
        error = {"error": type(exc).__name__, "detail": str(exc)}
        if isinstance(exc, ConfigError):
            error["errors"] = exc.errors
        json.dump(error, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        if getattr(args, "command", None) == "validate" and isinstance(
                exc, (ConfigError, DatasetError)):
            # validate reports its verdict on stdout too
            json.dump({"valid": False, "detail": str(exc)}, sys.stdout,
                      indent=2, sort_keys=True)
            sys.stdout.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
