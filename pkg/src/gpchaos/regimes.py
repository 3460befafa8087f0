"""Regime labels from exponents, and (V, F) domain maps."""
from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import GridMiss, InvalidConfig
from .indicators import DEFAULT_DELTA0, DEFAULT_RENORM_INTERVAL, lyapunov_benettin
from .integrator import IntegratorConfig
from .model import CASES, CasePreset, State

__all__ = [
    "Regime",
    "RegimeThresholds",
    "LyapunovConfig",
    "GridAxis",
    "RegimeMap",
    "classify",
    "scan",
    "regime_bands",
]


class Regime(enum.IntEnum):
    """Ordered chaos regimes; the integer value is the code written to grid files."""

    REGULAR = 0
    SMALL_CHAOS = 1
    STRONG_CHAOS = 2
    GLOBAL_CHAOS = 3

    @property
    def label(self):
        return ("Regular", "SmallChaos", "StrongChaos", "GlobalChaos")[self.value]

    @classmethod
    def from_label(cls, text):
        for r in cls:
            if text in (r.label, r.name, str(r.value)):
                return r
        raise ValueError(f"unknown regime {text!r}")


@dataclass(frozen=True)
class RegimeThresholds:
    t_small: float = 0.05
    t_strong: float = 0.80
    t_global: float = 8.0

    def __post_init__(self):
        if not 0 < self.t_small < self.t_strong < self.t_global:
            raise InvalidConfig("0 < t_small < t_strong < t_global")


@dataclass(frozen=True)
class LyapunovConfig:
    """Settings for the Benettin runs; ``discard`` is an x-length, None for a tenth of the span."""

    delta0: float = DEFAULT_DELTA0
    renorm_interval: float = DEFAULT_RENORM_INTERVAL
    discard: float | None = None
    phi0: float = 0.1
    y0: float = 0.0
    x0: float = 0.0

    def __post_init__(self):
        if not self.delta0 > 0:
            raise InvalidConfig("delta0 > 0")
        if not self.renorm_interval > 0:
            raise InvalidConfig("renorm_interval > 0")
        if self.discard is not None and self.discard < 0:
            raise InvalidConfig("discard >= 0")
        for name in ("phi0", "y0", "x0"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidConfig(f"{name} must be finite")

    @property
    def initial_state(self):
        return State(self.x0, self.phi0, self.y0)


def classify(lambda_max, diverged, t: RegimeThresholds = RegimeThresholds()) -> Regime:
    if diverged or math.isnan(lambda_max):
        return Regime.GLOBAL_CHAOS
    if lambda_max < t.t_small:
        return Regime.REGULAR
    if lambda_max < t.t_strong:
        return Regime.SMALL_CHAOS
    if lambda_max < t.t_global:
        return Regime.STRONG_CHAOS
    return Regime.GLOBAL_CHAOS


@dataclass(frozen=True)
class GridAxis:
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise InvalidConfig("grid step > 0")
        if self.stop < self.start:
            raise InvalidConfig("grid stop >= start")

    def values(self):
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        # round away the 0.1+0.2 style noise so grid nodes print cleanly
        return np.round(self.start + self.step * np.arange(n), 12)


@dataclass(frozen=True)
class RegimeMap:
    case_label: str
    v_axis: np.ndarray
    f_axis: np.ndarray
    lambda_max: np.ndarray
    regime: np.ndarray
    diverged: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def shape(self):
        return self.lambda_max.shape

    def cells(self):
        """Rows (V, F, lambda_max, diverged, Regime) ordered by (V index, F index)."""
        for i, v in enumerate(self.v_axis):
            for j, f in enumerate(self.f_axis):
                yield (float(v), float(f), float(self.lambda_max[i, j]),
                       bool(self.diverged[i, j]), Regime(int(self.regime[i, j])))

    def column(self, v_fixed):
        hits = np.flatnonzero(np.isclose(self.v_axis, v_fixed, rtol=0, atol=1e-9))
        if len(hits) == 0:
            raise GridMiss(f"V={v_fixed} is not on the grid")
        return hits[0]


def _cell(job):
    params, s0, x_end, lcfg, cfg = job
    res = lyapunov_benettin(
        params, s0, x_end, lcfg.delta0, lcfg.renorm_interval, lcfg.discard,
        step=cfg.step, blowup_threshold=cfg.blowup_threshold, adaptive=cfg.adaptive,
    )
    return res.lambda_max, res.diverged


def scan(case: CasePreset | str, v_range: GridAxis = GridAxis(0.0, 1.0, 0.02),
         f_range: GridAxis = GridAxis(0.0, 1.0, 0.02),
         cfg: IntegratorConfig = IntegratorConfig(),
         lyap_cfg: LyapunovConfig = LyapunovConfig(),
         t: RegimeThresholds = RegimeThresholds(), workers=1) -> RegimeMap:
    """Benettin exponent and regime on every (V, F) node, with v1 = v2 = V.

    Cells are independent; with ``workers > 1`` they run in a process pool and
    are merged back by grid index, so the map does not depend on scheduling.
    """
    if isinstance(case, str):
        case = CASES[case.upper()]
    if workers < 1:
        raise InvalidConfig("workers >= 1")
    v_axis, f_axis = v_range.values(), f_range.values()
    s0 = lyap_cfg.initial_state
    if not cfg.x_end > s0.x:
        raise InvalidConfig("x_end > starting x")
    jobs = [(case.at(float(v), float(f)), s0, cfg.x_end, lyap_cfg, cfg)
            for v in v_axis for f in f_axis]
    if workers == 1 or len(jobs) == 1:
        results = [_cell(j) for j in jobs]
    else:
        chunk = max(1, len(jobs) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_cell, jobs, chunksize=chunk))
    shape = (len(v_axis), len(f_axis))
    lam = np.array([r[0] for r in results], dtype=float).reshape(shape)
    div = np.array([r[1] for r in results], dtype=bool).reshape(shape)
    reg = np.array([int(classify(l, d, t)) for l, d in zip(lam.ravel(), div.ravel())],
                   dtype=int).reshape(shape)
    meta = {
        "case": case.label,
        **{k: v for k, v in case.params.to_dict().items() if k not in ("v1", "v2", "f")},
        "phi0": s0.phi, "y0": s0.y, "x0": s0.x,
        **{f"integrator.{k}": v for k, v in asdict(cfg).items()},
        **{f"lyapunov.{k}": v for k, v in asdict(lyap_cfg).items() if k not in ("phi0", "y0", "x0")},
        **asdict(t),
        "divergence_policy": "diverged cells are labelled GlobalChaos",
    }
    return RegimeMap(case.label, v_axis, f_axis, lam, reg, div, meta)


def regime_bands(rmap: RegimeMap, v_fixed):
    """Run-length encode the regime column at ``v_fixed``: [((f_lo, f_hi), Regime), ...].

    Consecutive bands share their boundary, which sits midway between the last
    node of one band and the first node of the next; the outer edges are the
    first and last F nodes, so the bands tile [f_min, f_max] exactly.
    """
    col = rmap.regime[rmap.column(v_fixed)]
    f = rmap.f_axis
    bands = []
    lo = float(f[0])
    start = 0
    for j in range(1, len(f) + 1):
        if j == len(f) or col[j] != col[start]:
            hi = float(f[-1]) if j == len(f) else 0.5 * float(f[j - 1] + f[j])
            bands.append(((lo, hi), Regime(int(col[start]))))
            lo = hi
            start = j
    return bands
