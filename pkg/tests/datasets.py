"""Deterministic synthetic AP deployments for the dataset-driven tests.

Two fixed-seed generators.  ``city_table`` builds a municipal-survey-scale
deployment (19,124 APs in lon/lat over a ~31 km square): a dense urban
core, a couple dozen satellite clusters, and thin background scatter -
the morphology a city-wide wardriving capture typically shows.
``campus_table`` builds a campus-scale deployment (243 APs in planar
metres over a ~5.5 km square): tight building clusters plus a handful of
outdoor one-offs.

Coordinates are synthetic; counts, extents, and coordinate conventions
match the survey shapes the analysis pipeline is meant to ingest.
"""

import csv
import math

import numpy as np

from dss_sim.deploy import R_EARTH_M

CITY_CENTER = (-4.25, 55.86)  # lon, lat
CITY_COUNT = 19_124
CITY_HALF_M = 15_600.0

CAMPUS_COUNT = 243
CAMPUS_SIDE_M = 5_477.0


def _city_xy(rng):
    """Planar offsets (metres from the center) for the city mixture."""
    n_core = int(round(CITY_COUNT * 0.55))
    n_bg = int(round(CITY_COUNT * 0.15))
    n_sat = CITY_COUNT - n_core - n_bg

    core = rng.normal(0.0, 2800.0, size=(n_core, 2))

    n_clusters = 24
    centers = rng.uniform(-13_000.0, 13_000.0, size=(n_clusters, 2))
    sigmas = rng.uniform(150.0, 500.0, size=n_clusters)
    sizes = rng.multinomial(n_sat, np.full(n_clusters, 1.0 / n_clusters))
    sat = np.concatenate([
        centers[i] + rng.normal(0.0, sigmas[i], size=(sizes[i], 2))
        for i in range(n_clusters)
    ])

    bg = rng.uniform(-CITY_HALF_M, CITY_HALF_M, size=(n_bg, 2))

    xy = np.concatenate([core, sat, bg])
    np.clip(xy, -CITY_HALF_M, CITY_HALF_M, out=xy)
    return xy[rng.permutation(len(xy))]


def city_table(seed=20_124):
    """(lon, lat) arrays for the synthetic city survey."""
    rng = np.random.default_rng(seed)
    xy = _city_xy(rng)
    k = math.pi / 180.0 * R_EARTH_M
    lon = CITY_CENTER[0] + xy[:, 0] / (k * math.cos(math.radians(CITY_CENTER[1])))
    lat = CITY_CENTER[1] + xy[:, 1] / k
    return lon, lat


def campus_table(seed=243, n_clusters=14, sigma_range=(25.0, 60.0),
                 scatter_fraction=0.15):
    """(x, y) arrays in metres for the synthetic campus deployment."""
    rng = np.random.default_rng(seed)
    n_scatter = int(round(CAMPUS_COUNT * scatter_fraction))
    n_clustered = CAMPUS_COUNT - n_scatter

    margin = 300.0
    centers = rng.uniform(margin, CAMPUS_SIDE_M - margin, size=(n_clusters, 2))
    sigmas = rng.uniform(*sigma_range, size=n_clusters)
    sizes = rng.multinomial(n_clustered, np.full(n_clusters, 1.0 / n_clusters))
    pts = [centers[i] + rng.normal(0.0, sigmas[i], size=(sizes[i], 2))
           for i in range(n_clusters)]
    pts.append(rng.uniform(0.0, CAMPUS_SIDE_M, size=(n_scatter, 2)))
    xy = np.concatenate(pts)
    np.clip(xy, 0.0, CAMPUS_SIDE_M, out=xy)
    xy = xy[rng.permutation(len(xy))]
    return xy[:, 0], xy[:, 1]


def write_city_csv(path, seed=20_124):
    lon, lat = city_table(seed)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "lon", "lat"])
        for i in range(len(lon)):
            writer.writerow([i, repr(float(lon[i])), repr(float(lat[i]))])
    return path


def write_campus_csv(path, seed=243):
    x, y = campus_table(seed)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "x_m", "y_m"])
        for i in range(len(x)):
            writer.writerow([i, repr(float(x[i])), repr(float(y[i]))])
    return path
