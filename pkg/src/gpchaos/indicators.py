"""Chaos diagnostics: portraits, stroboscopic sections, profiles, Lyapunov exponents."""
from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateSeparation, InvalidConfig
from .integrator import DEFAULT_STEP, REFINE_TOL, IntegratorConfig, Trajectory, integrate
from .model import ModelParams, PotentialParams, State, eval_potential

__all__ = [
    "DEFAULT_DISCARD_FRACTION",
    "DEFAULT_SECTION_PERIOD",
    "PoincareSection",
    "LyapunovResult",
    "phase_portrait",
    "poincare_section",
    "potential_profile",
    "wavefunction_profile",
    "lyapunov_benettin",
    "lyapunov_variational",
    "lyapunov",
]

DEFAULT_DISCARD_FRACTION = 0.1
DEFAULT_SECTION_PERIOD = 2.0 * math.pi
DEFAULT_DELTA0 = 1e-6
DEFAULT_RENORM_INTERVAL = 1.0


@dataclass(frozen=True)
class PoincareSection:
    phi: np.ndarray
    y: np.ndarray
    sampling_period: float
    x0: float
    terminated_early: bool = False

    @property
    def points(self):
        return np.column_stack([self.phi, self.y])

    @property
    def x(self):
        return self.x0 + self.sampling_period * np.arange(len(self.phi))

    def __len__(self):
        return len(self.phi)


@dataclass(frozen=True)
class LyapunovResult:
    lambda_max: float
    history: np.ndarray
    delta0: float
    renorm_interval: float
    n_renorms: int
    method: str
    diverged: bool
    x_renorm: np.ndarray = dataclasses.field(default_factory=lambda: np.empty(0))

    @classmethod
    def from_log_stretch(cls, log_stretch, x_start, interval, delta0, method, diverged):
        history = np.cumsum(log_stretch) / (interval * np.arange(1, len(log_stretch) + 1))
        lam = float(history[-1]) if len(history) else math.nan
        x_renorm = x_start + interval * np.arange(1, len(log_stretch) + 1)
        return cls(lam, history, delta0, interval, len(history), method, bool(diverged), x_renorm)


def _discard_count(n, fraction):
    if not 0 <= fraction < 1:
        raise InvalidConfig("0 <= discard_fraction < 1")
    return int(math.floor(n * fraction))


def phase_portrait(m: ModelParams, s0: State, cfg: IntegratorConfig,
                   discard_fraction=DEFAULT_DISCARD_FRACTION):
    """(phi, y) points after dropping the leading transient; returns (points, trajectory)."""
    if not 0 <= discard_fraction < 1:
        raise InvalidConfig("0 <= discard_fraction < 1")
    traj = integrate(m, s0, cfg)
    k = _discard_count(len(traj), discard_fraction)
    return np.column_stack([traj.phi[k:], traj.y[k:]]), traj


def _section_step(x_s, step):
    n = int(math.ceil(x_s / step - 1e-12))
    return x_s / n, n


def poincare_section(m: ModelParams, s0: State, cfg: IntegratorConfig,
                     x_s=DEFAULT_SECTION_PERIOD, x0=None) -> PoincareSection:
    """Stroboscopic samples at x0, x0 + x_s, ... up to cfg.x_end.

    The marching step is shrunk to x_s / ceil(x_s / step) so that section
    points land on whole steps.
    """
    if x0 is None:
        x0 = s0.x
    if not x_s > 0:
        raise InvalidConfig("x_s > 0")
    if x_s < cfg.step:
        raise InvalidConfig("x_s >= step")
    if x0 < s0.x:
        raise InvalidConfig("x0 >= initial x")
    if cfg.x_end < x0:
        raise InvalidConfig("x_end >= x0")
    start = s0
    if x0 > s0.x:
        pre = integrate(m, s0, dataclasses.replace(cfg, x_end=x0, record_stride=1 << 30))
        if pre.terminated_early:
            return PoincareSection(np.empty(0), np.empty(0), x_s, x0, True)
        start = pre.final
    h, per = _section_step(x_s, cfg.step)
    n_sections = int(math.floor((cfg.x_end - x0) / x_s + 1e-9))
    if n_sections == 0:
        return PoincareSection(np.array([start.phi]), np.array([start.y]), x_s, x0)
    xs, phis, ys, count, status = _kernels.integrate(
        m.as_array(), float(x0), float(start.phi), float(start.y), h, n_sections * per,
        float(x0 + n_sections * x_s), 0.0, per, float(cfg.blowup_threshold),
        bool(cfg.adaptive), REFINE_TOL,
    )
    return PoincareSection(phis[:count].copy(), ys[:count].copy(), x_s, x0,
                           status == _kernels.BLOWUP)


def potential_profile(p: PotentialParams, x_min, x_max, n):
    """``n`` evenly spaced samples of the lattice potential as an (n, 2) array of (x, V)."""
    if n < 2:
        raise InvalidConfig("n >= 2")
    if not x_max > x_min:
        raise InvalidConfig("x_max > x_min")
    xs = np.linspace(x_min, x_max, int(n))
    return np.column_stack([xs, [eval_potential(p, float(x)) for x in xs]])


def wavefunction_profile(m: ModelParams, s0: State, cfg: IntegratorConfig):
    traj = integrate(m, s0, cfg)
    return np.column_stack([traj.x, traj.phi]), traj


def _lyapunov_grid(s0, x_end, renorm_interval, discard, step):
    if not renorm_interval > 0:
        raise InvalidConfig("renorm_interval > 0")
    if not step > 0:
        raise InvalidConfig("step > 0")
    span = x_end - s0.x
    if span < 10 * renorm_interval - 1e-9:
        raise InvalidConfig("x_end - x0 >= 10 * renorm_interval")
    if discard is None:
        discard = DEFAULT_DISCARD_FRACTION * span
    if not 0 <= discard < span:
        raise InvalidConfig("0 <= discard < x_end - x0")
    steps = max(1, int(round(renorm_interval / step)))
    n_intervals = int(math.floor(span / renorm_interval + 1e-9))
    n_discard = int(math.ceil(discard / renorm_interval - 1e-9))
    if n_discard >= n_intervals:
        raise InvalidConfig("discard window leaves no renormalisation intervals")
    return renorm_interval / steps, steps, n_intervals, n_discard


def lyapunov_benettin(m: ModelParams, s0: State, x_end, delta0=DEFAULT_DELTA0,
                      renorm_interval=DEFAULT_RENORM_INTERVAL, discard=None, *,
                      step=DEFAULT_STEP, blowup_threshold=1e8,
                      adaptive=False) -> LyapunovResult:
    """Maximal exponent from a companion trajectory kept ``delta0`` away.

    The companion starts displaced along phi (with the sign of phi0, so that
    negating the initial state mirrors the whole computation). ``discard`` is
    an x-length, by default the first tenth of the span.
    """
    if not delta0 > 0:
        raise InvalidConfig("delta0 > 0")
    if not s0.finite:
        raise InvalidConfig("initial state must be finite")
    h, steps, n_int, n_disc = _lyapunov_grid(s0, x_end, renorm_interval, discard, step)
    log_stretch, count, diverged, n_degenerate = _kernels.benettin(
        m.as_array(), float(s0.x), float(s0.phi), float(s0.y), h, steps, n_int, n_disc,
        float(delta0), float(blowup_threshold), bool(adaptive), REFINE_TOL,
    )
    if n_degenerate:
        warnings.warn(f"companion separation vanished {n_degenerate} time(s); restarted along phi",
                      DegenerateSeparation, stacklevel=2)
    return LyapunovResult.from_log_stretch(
        log_stretch[:count], s0.x + n_disc * renorm_interval, renorm_interval,
        float(delta0), "benettin", diverged,
    )


def lyapunov_variational(m: ModelParams, s0: State, x_end,
                         renorm_interval=DEFAULT_RENORM_INTERVAL, discard=None, *,
                         step=DEFAULT_STEP, blowup_threshold=1e8) -> LyapunovResult:
    """Maximal exponent from the linearised flow integrated alongside the trajectory."""
    if not s0.finite:
        raise InvalidConfig("initial state must be finite")
    h, steps, n_int, n_disc = _lyapunov_grid(s0, x_end, renorm_interval, discard, step)
    log_stretch, count, diverged = _kernels.variational(
        m.as_array(), float(s0.x), float(s0.phi), float(s0.y), h, steps, n_int, n_disc,
        float(blowup_threshold),
    )
    return LyapunovResult.from_log_stretch(
        log_stretch[:count], s0.x + n_disc * renorm_interval, renorm_interval,
        math.nan, "variational", diverged,
    )


def lyapunov(method, m, s0, x_end, delta0=DEFAULT_DELTA0, renorm_interval=DEFAULT_RENORM_INTERVAL,
             discard=None, **kw):
    if method == "benettin":
        return lyapunov_benettin(m, s0, x_end, delta0, renorm_interval, discard, **kw)
    if method == "variational":
        kw.pop("adaptive", None)
        return lyapunov_variational(m, s0, x_end, renorm_interval, discard, **kw)
    raise InvalidConfig(f"method must be benettin or variational (got {method!r})")
