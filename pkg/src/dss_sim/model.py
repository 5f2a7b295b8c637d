"""Core domain types and configuration.

Units are SI throughout: metres, seconds, watts, hertz, bits per second.
A sub-band occupation state (SBOS) is an int8 vector of length ``S`` whose
entries are +1 for an occupied sub-band and -1 for an unoccupied one; the
occupation of a whole network is an ``(n, S)`` int8 matrix, one row per node.

Everything in this module is a value object: construct it, validate it,
share it freely between experiments.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from enum import Enum

import numpy as np

__all__ = [
    "AllocationResult",
    "ConfigError",
    "Node",
    "NodeSet",
    "RadioConfig",
    "Scheme",
    "SimConfig",
    "full_occupation",
    "is_valid_sbos",
    "load_config",
    "parse_config_mapping",
    "validate_config",
]


class ConfigError(ValueError):
    """Raised when a configuration violates one or more named constraints."""

    def __init__(self, errors):
        errors = [str(e) for e in errors]
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass(frozen=True)
class RadioConfig:
    """Link-budget constants shared by every node.

    Parameters
    ----------
    S : int
        Number of sub-bands.
    W : float
        Bandwidth of one sub-band [Hz].
    P_T : float
        Transmit power per node [W].
    R : float
        Coverage radius of an AP [m].
    alpha : float
        Path-loss exponent; gains follow ``max(d, d_min) ** -alpha``.
    noise_density : float
        One-sided noise power spectral density [W/Hz].  The per-band noise
        power is ``noise_density * W``.
    d_min : float
        Minimum propagation distance [m]; clamps the path-gain singularity
        for co-located transmitters.
    d_ref : float or None
        Distance of the reference served user [m].  ``None`` means "use R",
        i.e. the served user sits at the coverage edge.
    """

    S: int = 10
    W: float = 20e6
    P_T: float = 1.0
    R: float = 30.0
    alpha: float = 4.0
    noise_density: float = 4e-21
    d_min: float = 1.0
    d_ref: float | None = None

    def __post_init__(self):
        if self.d_ref is None:
            object.__setattr__(self, "d_ref", float(self.R))

    @property
    def n0(self) -> float:
        """Noise power inside one sub-band [W]."""
        return self.noise_density * self.W

    @property
    def total_bandwidth(self) -> float:
        """Aggregate bandwidth ``S * W`` [Hz]."""
        return self.S * self.W


@dataclass(frozen=True)
class SimConfig:
    """Knobs of the event-driven dynamics.

    Parameters
    ----------
    R_N : float
        Neighborhood radius [m]: nodes within this distance exchange votes.
    clock_rate : float
        Rate of each node's trigger clock [1/s].
    max_sim_time : float or None
        Simulated-time horizon [s].  ``None`` picks a horizon giving every
        node 50 expected triggers (``50 / clock_rate``).
    convergence_window : int or None
        Number of consecutive triggers without any occupation change that
        declares convergence.  ``None`` means three times the node count.
    initial_occupancy : str
        Occupation state every node starts from, before its first trigger.
        ``"random"`` (the default) occupies each band independently with
        probability one half, drawn from the run's seed: an uncoordinated
        brown-field deployment.  ``"empty"`` starts all sub-bands free (a
        node transmits nothing until it has decided once); ``"full"``
        starts from the greedy state, everyone on every band.  The choice
        matters: the voting dynamics have many fixed points, and the
        starting state selects the family the network settles into.
    seed : int
        Seed of the run's random stream.
    """

    R_N: float = 300.0
    clock_rate: float = 1.0
    max_sim_time: float | None = None
    convergence_window: int | None = None
    initial_occupancy: str = "random"
    seed: int = 0


def _config_errors(radio: RadioConfig, sim: SimConfig) -> list[str]:
    errors = []
    if not (isinstance(radio.S, (int, np.integer)) and radio.S >= 1):
        errors.append("S must be an integer >= 1")
    if not radio.W > 0:
        errors.append("W must be > 0")
    if not radio.P_T > 0:
        errors.append("P_T must be > 0")
    if not radio.R > 0:
        errors.append("R must be > 0")
    if not radio.alpha >= 2:
        errors.append("alpha must be >= 2")
    if not radio.noise_density > 0:
        errors.append("noise_density must be > 0")
    if not radio.d_min > 0:
        errors.append("d_min must be > 0")
    if radio.d_ref is not None and not radio.d_ref >= radio.d_min:
        errors.append("d_ref must be >= d_min")
    if not sim.R_N > 0:
        errors.append("R_N must be > 0")
    if not sim.clock_rate > 0:
        errors.append("clock_rate must be > 0")
    if sim.max_sim_time is not None and not sim.max_sim_time > 0:
        errors.append("max_sim_time must be > 0")
    if sim.convergence_window is not None and not sim.convergence_window >= 1:
        errors.append("convergence_window must be >= 1")
    if sim.initial_occupancy not in ("empty", "random", "full"):
        errors.append("initial_occupancy must be one of 'empty', 'random', 'full'")
    return errors


def validate_config(radio: RadioConfig, sim: SimConfig) -> tuple[RadioConfig, SimConfig]:
    """Return ``(radio, sim)`` unchanged, or raise :class:`ConfigError`.

    The exception lists every violated constraint by name, not just the
    first one.  Validation is idempotent.
    """
    errors = _config_errors(radio, sim)
    if errors:
        raise ConfigError(errors)
    return radio, sim


_RADIO_FIELDS = tuple(f.name for f in fields(RadioConfig))
_SIM_FIELDS = tuple(f.name for f in fields(SimConfig))
_INT_FIELDS = frozenset({"S", "convergence_window", "seed"})
_STR_FIELDS = frozenset({"initial_occupancy"})


def _coerce(name, value):
    if name in _STR_FIELDS:
        if not isinstance(value, str):
            raise ConfigError([f"{name} must be a string"])
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError([f"{name} must be a number"])
    if name in _INT_FIELDS:
        if float(value) != int(value):
            raise ConfigError([f"{name} must be an integer"])
        return int(value)
    return float(value)


def parse_config_mapping(mapping, extra_sections=()):
    """Build ``(RadioConfig, SimConfig, extras)`` from a flat mapping.

    Keys must match configuration field names exactly; anything else is
    rejected unless listed in ``extra_sections``, in which case the raw
    value is passed through in ``extras``.  Missing keys take defaults.
    """
    if not isinstance(mapping, dict):
        raise ConfigError(["configuration must be a JSON object"])
    radio_kw, sim_kw, extras = {}, {}, {}
    unknown = []
    for key, value in mapping.items():
        if key in _RADIO_FIELDS:
            radio_kw[key] = _coerce(key, value)
        elif key in _SIM_FIELDS:
            sim_kw[key] = _coerce(key, value)
        elif key in extra_sections:
            extras[key] = value
        else:
            unknown.append(key)
    if unknown:
        raise ConfigError([f"unknown configuration key: {k}" for k in sorted(unknown)])
    radio = RadioConfig(**radio_kw)
    sim = SimConfig(**sim_kw)
    validate_config(radio, sim)
    return radio, sim, extras


def load_config(path, extra_sections=()):
    """Read a JSON configuration file; see :func:`parse_config_mapping`."""
    with open(path, encoding="utf-8") as fh:
        try:
            mapping = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError([f"{path}: invalid JSON: {exc}"]) from exc
    return parse_config_mapping(mapping, extra_sections=extra_sections)


class Scheme(str, Enum):
    """Spectrum allocation scheme."""

    DSS = "dss"
    GREEDY = "greedy"


@dataclass(frozen=True)
class Node:
    """One access point."""

    id: int
    x: float
    y: float

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)


class NodeSet:
    """A planar AP deployment with contiguous ids ``0..n-1``.

    Wraps a read-only ``(n, 2)`` float64 coordinate array (metres).
    """

    __slots__ = ("_xy",)

    def __init__(self, xy):
        arr = np.array(xy, dtype=np.float64, copy=True)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("coordinates must have shape (n, 2)")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        arr.setflags(write=False)
        self._xy = arr

    @property
    def xy(self) -> np.ndarray:
        return self._xy

    def __len__(self) -> int:
        return self._xy.shape[0]

    def __getitem__(self, i: int) -> Node:
        x, y = self._xy[i]
        return Node(int(i) if i >= 0 else len(self) + int(i), float(x), float(y))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __repr__(self) -> str:
        return f"NodeSet(n={len(self)})"

    def subset(self, ids) -> "NodeSet":
        """New NodeSet from the rows ``ids``, re-numbered contiguously."""
        ids = np.asarray(ids, dtype=np.int64)
        if ids.size == 0:
            return NodeSet(np.zeros((0, 2)))
        if ids.min() < 0 or ids.max() >= len(self):
            raise IndexError("node id out of range")
        return NodeSet(self._xy[ids])


def is_valid_sbos(sbos, S=None) -> bool:
    """True if every entry of ``sbos`` is +1 or -1 (and width matches S)."""
    arr = np.asarray(sbos)
    if S is not None and arr.shape[-1] != S:
        return False
    return bool(np.all((arr == 1) | (arr == -1)))


def full_occupation(n: int, S: int) -> np.ndarray:
    """The all-(+1) occupation matrix used by the greedy scheme."""
    return np.ones((n, S), dtype=np.int8)


@dataclass(frozen=True)
class AllocationResult:
    """Outcome of running one allocation scheme on one network.

    ``sbos`` is the final ``(n, S)`` occupation matrix; rates are the
    realized downlink datarates with interference from the whole network.
    ``se_per_node`` is ``rate / (S * W)``.
    """

    scheme: Scheme
    sbos: np.ndarray
    rate_per_node: np.ndarray
    se_per_node: np.ndarray
    triggers_executed: int
    converged: bool

    def __post_init__(self):
        n = self.sbos.shape[0]
        if self.rate_per_node.shape != (n,) or self.se_per_node.shape != (n,):
            raise ValueError("per-node arrays must all have length n")
        if not is_valid_sbos(self.sbos):
            raise ValueError("sbos entries must be +1 or -1")
        if n and self.rate_per_node.min() < 0:
            raise ValueError("rates must be non-negative")
        if self.triggers_executed < 0:
            raise ValueError("triggers_executed must be >= 0")
