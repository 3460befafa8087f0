"""Fixed-step RK4 marching of the GP system along x."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidConfig
from .model import ModelParams, State

__all__ = ["IntegratorConfig", "Termination", "Trajectory", "rk4_step", "integrate"]

DEFAULT_STEP = 0.005
DEFAULT_X_END = 1000.0
DEFAULT_BLOWUP = 1e8
REFINE_TOL = 1e-9


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = DEFAULT_STEP
    x_end: float = DEFAULT_X_END
    record_stride: int = 1
    blowup_threshold: float = DEFAULT_BLOWUP
    adaptive: bool = False

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise InvalidConfig("step > 0")
        if not math.isfinite(self.x_end):
            raise InvalidConfig("x_end must be finite")
        if int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise InvalidConfig("record_stride >= 1")
        if not self.blowup_threshold > 0:
            raise InvalidConfig("blowup_threshold > 0")


class Termination(str, enum.Enum):
    COMPLETED = "completed"
    BLOWUP = "blowup"


@dataclass(frozen=True)
class Trajectory:
    """Recorded samples as parallel arrays ``x``, ``phi``, ``y``."""

    x: np.ndarray
    phi: np.ndarray
    y: np.ndarray
    stride: int
    step: float
    termination: Termination = Termination.COMPLETED

    @property
    def terminated_early(self):
        return self.termination is Termination.BLOWUP

    @property
    def samples(self):
        return [State(float(a), float(b), float(c)) for a, b, c in zip(self.x, self.phi, self.y)]

    @property
    def final(self):
        return State(float(self.x[-1]), float(self.phi[-1]), float(self.y[-1]))

    def __len__(self):
        return len(self.x)


def rk4_step(m: ModelParams, s: State, h: float) -> State:
    """One classical RK4 step; a non-finite result is returned as-is for the caller to flag."""
    if not h > 0:
        raise InvalidConfig("h > 0")
    phi, y = _kernels.rk4_step(float(s.x), float(s.phi), float(s.y), float(h), m.as_array())
    return State(s.x + h, phi, y)


def split_span(x0, x_end, step):
    """Whole steps of ``step`` covering [x0, x_end] plus the shortened final step."""
    span = x_end - x0
    n_full = int(math.floor(span / step + 1e-9))
    h_last = x_end - (x0 + n_full * step)
    if abs(h_last) <= 1e-12 * max(1.0, abs(x_end)):
        h_last = 0.0
    elif h_last < 0:
        n_full -= 1
        h_last = x_end - (x0 + n_full * step)
    return n_full, h_last


def integrate(m: ModelParams, s0: State, cfg: IntegratorConfig) -> Trajectory:
    if not s0.finite:
        raise InvalidConfig("initial state must be finite")
    if not cfg.x_end > s0.x:
        raise InvalidConfig("x_end > starting x")
    n_full, h_last = split_span(s0.x, cfg.x_end, cfg.step)
    xs, phis, ys, count, status = _kernels.integrate(
        m.as_array(), float(s0.x), float(s0.phi), float(s0.y), float(cfg.step),
        n_full, float(cfg.x_end), float(h_last), int(cfg.record_stride),
        float(cfg.blowup_threshold), bool(cfg.adaptive), REFINE_TOL,
    )
    term = Termination.BLOWUP if status == _kernels.BLOWUP else Termination.COMPLETED
    return Trajectory(xs[:count].copy(), phis[:count].copy(), ys[:count].copy(),
                      int(cfg.record_stride), float(cfg.step), term)
