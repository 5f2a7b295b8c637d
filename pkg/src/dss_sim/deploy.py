"""Node deployment: synthetic point processes and real AP datasets.

Synthetic networks come from a homogeneous Poisson point process over a
rectangular region.  Real deployments are read from CSV, either already in
metres or as WGS84 lon/lat pairs that get projected onto a local tangent
plane with an equirectangular projection (adequate at city scale).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .model import NodeSet

__all__ = [
    "DatasetError",
    "GridCell",
    "R_EARTH_M",
    "Region",
    "generate_ppp",
    "generate_uniform",
    "ingest_ap_csv",
    "nearest_neighbor_distances",
    "partition_grid",
    "project_lonlat_to_meters",
    "save_nodes_csv",
]

R_EARTH_M = 6_371_000.0


class DatasetError(ValueError):
    """Raised for malformed or unusable AP dataset files."""


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle, metres."""

    width: float
    height: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError("region width and height must be > 0")

    @property
    def area_m2(self) -> float:
        return self.width * self.height

    @property
    def area_km2(self) -> float:
        return self.area_m2 / 1e6

    def contains(self, x, y) -> bool:
        """Half-open membership test (max edges excluded)."""
        x0, y0 = self.origin
        return x0 <= x < x0 + self.width and y0 <= y < y0 + self.height


@dataclass(frozen=True)
class GridCell:
    """One cell of a rectangular partition of a deployment."""

    row: int
    col: int
    bounds: Region
    node_ids: np.ndarray


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def generate_ppp(density_per_km2: float, region: Region, seed) -> NodeSet:
    """Draw a homogeneous Poisson point process.

    The node count is Poisson with mean ``density * area``; positions are
    i.i.d. uniform over the region.  The same seed reproduces the same
    deployment bit for bit.
    """
    if density_per_km2 < 0:
        raise ValueError("density must be >= 0")
    rng = _rng(seed)
    count = int(rng.poisson(density_per_km2 * region.area_km2))
    return _uniform_nodes(count, region, rng)


def generate_uniform(count: int, region: Region, seed) -> NodeSet:
    """Place exactly ``count`` nodes uniformly (a PPP conditioned on N)."""
    if count < 0:
        raise ValueError("count must be >= 0")
    return _uniform_nodes(int(count), region, _rng(seed))


def _uniform_nodes(count: int, region: Region, rng) -> NodeSet:
    x0, y0 = region.origin
    lo = np.array([x0, y0])
    hi = np.array([x0 + region.width, y0 + region.height])
    xy = rng.uniform(lo, hi, size=(count, 2))
    return NodeSet(xy)


def project_lonlat_to_meters(lon, lat, origin_lon: float, origin_lat: float):
    """Equirectangular projection onto the tangent plane at the origin.

    ``x = (lon - lon0) * pi/180 * R_E * cos(lat0)``, ``y`` likewise from the
    latitude difference.  Returns ``(x, y)`` in metres; accepts scalars or
    arrays.  Latitudes must satisfy ``|lat| < 90``.
    """
    lon = np.asarray(lon, dtype=np.float64)
    lat = np.asarray(lat, dtype=np.float64)
    if np.any(np.abs(lat) >= 90.0) or abs(origin_lat) >= 90.0:
        raise ValueError("latitudes must satisfy |lat| < 90")
    k = math.pi / 180.0 * R_EARTH_M
    x = (lon - origin_lon) * k * math.cos(math.radians(origin_lat))
    y = (lat - origin_lat) * k
    return x, y


def ingest_ap_csv(path, mode: str = "lonlat", origin=None) -> NodeSet:
    """Read an AP deployment from CSV.

    The file needs a header row and three columns: ``id, lon, lat`` when
    ``mode="lonlat"`` or ``id, x_m, y_m`` when ``mode="xy"``.  Ids in the
    file are ignored; nodes are re-numbered ``0..n-1`` in row order.
    Lon/lat rows are projected about ``origin`` (a ``(lon, lat)`` pair,
    defaulting to the dataset centroid).  A malformed row raises
    :class:`DatasetError` naming its line number.
    """
    if mode not in ("lonlat", "xy"):
        raise ValueError("mode must be 'lonlat' or 'xy'")
    rows = []
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"{path}: {exc.strerror or exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DatasetError(f"{path}: missing header row")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 3:
                raise DatasetError(
                    f"{path}: line {lineno}: expected 3 columns, got {len(row)}"
                )
            try:
                a, b = float(row[1]), float(row[2])
            except ValueError as exc:
                raise DatasetError(
                    f"{path}: line {lineno}: non-numeric coordinate"
                ) from exc
            if not (math.isfinite(a) and math.isfinite(b)):
                raise DatasetError(f"{path}: line {lineno}: non-finite coordinate")
            rows.append((a, b))
    if not rows:
        return NodeSet(np.zeros((0, 2)))
    data = np.asarray(rows, dtype=np.float64)
    if mode == "xy":
        return NodeSet(data)
    lon, lat = data[:, 0], data[:, 1]
    if np.any(np.abs(lat) >= 90.0):
        bad = int(np.argmax(np.abs(lat) >= 90.0))
        raise DatasetError(f"{path}: line {bad + 2}: latitude out of range")
    if origin is None:
        origin = (float(lon.mean()), float(lat.mean()))
    x, y = project_lonlat_to_meters(lon, lat, origin[0], origin[1])
    return NodeSet(np.column_stack([x, y]))


def save_nodes_csv(nodes: NodeSet, path) -> None:
    """Write a NodeSet as ``id, x_m, y_m`` rows."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "x_m", "y_m"])
        for node in nodes:
            writer.writerow([node.id, repr(node.x), repr(node.y)])


def partition_grid(nodes: NodeSet, rows: int, cols: int) -> list[GridCell]:
    """Split the deployment's bounding box into ``rows x cols`` cells.

    Cells are half-open on their max edges; nodes sitting exactly on the
    bounding box's max edge go to the last cell.  Returns the cells in
    row-major order; empty cells are included.  Every node lands in exactly
    one cell.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    if len(nodes) == 0:
        raise ValueError("cannot partition an empty node set")
    xy = nodes.xy
    x0, y0 = xy[:, 0].min(), xy[:, 1].min()
    x1, y1 = xy[:, 0].max(), xy[:, 1].max()
    # Degenerate (co-located or collinear) deployments still get valid,
    # nominally thin cells.
    sx = (x1 - x0) if x1 > x0 else 1e-9
    sy = (y1 - y0) if y1 > y0 else 1e-9
    ci = np.minimum((((xy[:, 0] - x0) / sx) * cols).astype(np.int64), cols - 1)
    ri = np.minimum((((xy[:, 1] - y0) / sy) * rows).astype(np.int64), rows - 1)
    flat = ri * cols + ci
    order = np.argsort(flat, kind="stable")
    sorted_flat = flat[order]
    cells = []
    cw, ch = sx / cols, sy / rows
    starts = np.searchsorted(sorted_flat, np.arange(rows * cols))
    stops = np.searchsorted(sorted_flat, np.arange(rows * cols), side="right")
    for r in range(rows):
        for c in range(cols):
            f = r * cols + c
            ids = np.sort(order[starts[f]:stops[f]])
            bounds = Region(cw, ch, (x0 + c * cw, y0 + r * ch))
            cells.append(GridCell(r, c, bounds, ids))
    return cells


def nearest_neighbor_distances(nodes: NodeSet) -> np.ndarray:
    """Distance from each node to its nearest other node.

    Needs at least two nodes.  Co-located nodes give zeros.
    """
    if len(nodes) < 2:
        raise ValueError("nearest-neighbor distances need >= 2 nodes")
    tree = cKDTree(nodes.xy)
    dist, _ = tree.query(nodes.xy, k=2)
    return np.asarray(dist[:, 1], dtype=np.float64)
