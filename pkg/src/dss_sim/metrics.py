"""Comparison metrics: fairness, spectral efficiency, rate distributions.

The scheme comparison always reports the same four numbers per run - mean
datarate, Jain fairness index, mean per-node spectral efficiency, and area
spectral efficiency - plus an optional rate CCDF for distribution plots.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import AllocationResult, RadioConfig

__all__ = [
    "MetricReport",
    "area_spectral_efficiency",
    "improvement",
    "jain_fairness",
    "rate_ccdf",
    "report_csv_fields",
    "report_csv_values",
    "report_to_dict",
    "summarize",
]


def jain_fairness(rates) -> float:
    """Jain's index ``(sum x)^2 / (n * sum x^2)``.

    Lies in ``[1/n, 1]``; 1 means perfectly equal rates.  Undefined (and an
    error) for an empty vector or all-zero rates.
    """
    x = np.asarray(rates, dtype=np.float64)
    if x.size == 0:
        raise ValueError("fairness is undefined for an empty rate vector")
    if np.any(x < 0):
        raise ValueError("rates must be non-negative")
    sum_sq = float((x * x).sum())
    if sum_sq == 0.0:
        raise ValueError("fairness is undefined when every rate is zero")
    total = float(x.sum())
    return total * total / (x.size * sum_sq)


def area_spectral_efficiency(result: AllocationResult, area_km2: float,
                             radio: RadioConfig) -> float:
    """Sum rate per unit bandwidth per unit area [bits/s/Hz/km^2]."""
    if not area_km2 > 0:
        raise ValueError("area_km2 must be > 0")
    return float(result.rate_per_node.sum()) / (radio.total_bandwidth * area_km2)


def rate_ccdf(rates, thresholds) -> list[tuple[float, float]]:
    """Empirical ``P(rate > t)`` at each threshold.

    Thresholds must be sorted ascending; the result is non-increasing in t.
    """
    x = np.asarray(rates, dtype=np.float64)
    t = np.asarray(thresholds, dtype=np.float64)
    if x.size == 0:
        raise ValueError("ccdf needs at least one rate")
    if t.size and np.any(np.diff(t) < 0):
        raise ValueError("thresholds must be sorted ascending")
    probs = (x[None, :] > t[:, None]).mean(axis=1)
    return list(zip(t.tolist(), probs.tolist()))


@dataclass(frozen=True)
class MetricReport:
    """The standard per-run metric bundle."""

    mean_rate_bps: float
    fairness_index: float
    mean_se_bps_per_hz: float
    ase_bps_per_hz_per_km2: float
    ccdf: list = field(default_factory=list)


def summarize(result: AllocationResult, area_km2: float, radio: RadioConfig,
              ccdf_thresholds=None):
    """MetricReport for one allocation result; ``None`` for an empty network."""
    rates = result.rate_per_node
    if rates.size == 0:
        return None
    return MetricReport(
        mean_rate_bps=float(rates.mean()),
        fairness_index=jain_fairness(rates),
        mean_se_bps_per_hz=float(result.se_per_node.mean()),
        ase_bps_per_hz_per_km2=area_spectral_efficiency(result, area_km2, radio),
        ccdf=rate_ccdf(rates, ccdf_thresholds) if ccdf_thresholds is not None else [],
    )


def _relative_pct(new: float, base: float):
    if base == 0.0:
        return None
    return 100.0 * (new - base) / base


def improvement(dss: MetricReport, greedy: MetricReport) -> dict:
    """How the voting scheme compares to greedy, in percent.

    Fairness additionally gets an absolute delta (index points); relative
    entries are ``None`` when the greedy value is zero.
    """
    return {
        "mean_rate_pct": _relative_pct(dss.mean_rate_bps, greedy.mean_rate_bps),
        "fairness_pct": _relative_pct(dss.fairness_index, greedy.fairness_index),
        "fairness_abs": dss.fairness_index - greedy.fairness_index,
        "mean_se_pct": _relative_pct(dss.mean_se_bps_per_hz,
                                     greedy.mean_se_bps_per_hz),
        "ase_pct": _relative_pct(dss.ase_bps_per_hz_per_km2,
                                 greedy.ase_bps_per_hz_per_km2),
    }


def report_to_dict(report) -> dict | None:
    """JSON-ready form of a MetricReport (CCDF as parallel arrays)."""
    if report is None:
        return None
    out = {
        "mean_rate_bps": report.mean_rate_bps,
        "fairness_index": report.fairness_index,
        "mean_se_bps_per_hz": report.mean_se_bps_per_hz,
        "ase_bps_per_hz_per_km2": report.ase_bps_per_hz_per_km2,
    }
    if report.ccdf:
        out["ccdf_thresholds_bps"] = [t for t, _ in report.ccdf]
        out["ccdf_prob"] = [p for _, p in report.ccdf]
    return out


def report_csv_fields() -> list[str]:
    """Column names used wherever a MetricReport lands in a CSV row."""
    return ["mean_rate_bps", "fairness_index", "mean_se_bps_per_hz",
            "ase_bps_per_hz_per_km2"]


def report_csv_values(report) -> list:
    """Values matching :func:`report_csv_fields`; blanks for ``None``."""
    if report is None:
        return [None] * 4
    return [report.mean_rate_bps, report.fairness_index,
            report.mean_se_bps_per_hz, report.ase_bps_per_hz_per_km2]
