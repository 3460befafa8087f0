"""Dimensionless stationary GP system on a tilted bichromatic lattice.

The condensate profile obeys

    phi'' = (g(x) phi^2 + chi(x) phi^4 - mu) phi + V(x) phi

with g(x) = g0 [a + b sin(omega1 x)], chi(x) = chi0 [c + d sin(omega2 x)]
and V(x) = v1 cos(k1 x) + v2 cos(k2 x) + f x.  Integrating along x turns the
eigenvalue problem into a driven nonlinear oscillator whose trajectories may
be regular or chaotic.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

__all__ = [
    "InteractionParams",
    "PotentialParams",
    "ModelParams",
    "State",
    "CasePreset",
    "CASES",
    "case_params",
    "eval_interactions",
    "eval_potential",
    "eval_rhs",
]


def _require_finite(obj, names):
    for name in names:
        value = getattr(obj, name)
        if not math.isfinite(value):
            raise ValidationError(f"{name} must be finite (got {value!r})")


@dataclass(frozen=True)
class InteractionParams:
    g0: float = 0.0
    a: float = 0.0
    b: float = 0.0
    omega1: float = 1.0
    chi0: float = 0.0
    c: float = 0.0
    d: float = 0.0
    omega2: float = 1.0

    def __post_init__(self):
        _require_finite(self, [f.name for f in dataclasses.fields(self)])
        if self.b != 0 and self.omega1 <= 0:
            raise ValidationError("omega1 > 0 when b != 0")
        if self.d != 0 and self.omega2 <= 0:
            raise ValidationError("omega2 > 0 when d != 0")


@dataclass(frozen=True)
class PotentialParams:
    v1: float = 0.0
    v2: float = 0.0
    k1: float = 1.0
    k2: float = 1.0
    f: float = 0.0

    def __post_init__(self):
        _require_finite(self, [f.name for f in dataclasses.fields(self)])
        if self.v1 != 0 and self.k1 == 0:
            raise ValidationError("k1 != 0 when v1 != 0")
        if self.v2 != 0 and self.k2 == 0:
            raise ValidationError("k2 != 0 when v2 != 0")


@dataclass(frozen=True)
class ModelParams:
    interactions: InteractionParams = field(default_factory=InteractionParams)
    potential: PotentialParams = field(default_factory=PotentialParams)
    mu: float = 0.0

    def __post_init__(self):
        _require_finite(self, ["mu"])

    def with_lattice(self, V=None, F=None, *, v1=None, v2=None):
        """Copy with the scan variables replaced; ``V`` sets both amplitudes."""
        pot = self.potential
        if V is not None:
            v1 = v2 = V
        pot = dataclasses.replace(
            pot,
            v1=pot.v1 if v1 is None else float(v1),
            v2=pot.v2 if v2 is None else float(v2),
            f=pot.f if F is None else float(F),
        )
        return dataclasses.replace(self, potential=pot)

    def as_array(self):
        """Flat float64 vector in the layout the compiled kernels expect."""
        i, p = self.interactions, self.potential
        return np.array(
            [i.g0, i.a, i.b, i.omega1, i.chi0, i.c, i.d, i.omega2,
             p.v1, p.v2, p.k1, p.k2, p.f, self.mu],
            dtype=np.float64,
        )

    def to_dict(self):
        return {**dataclasses.asdict(self.interactions),
                **dataclasses.asdict(self.potential), "mu": self.mu}


@dataclass(frozen=True)
class State:
    """Phase-space point. Non-finite entries mark a blown-up integration."""

    x: float
    phi: float
    y: float

    @property
    def finite(self):
        return math.isfinite(self.x) and math.isfinite(self.phi) and math.isfinite(self.y)

    def __neg__(self):
        return State(self.x, -self.phi, -self.y)


@dataclass(frozen=True)
class CasePreset:
    label: str
    params: ModelParams

    def at(self, V, F):
        return self.params.with_lattice(V=V, F=F)


MU_PRESET = 0.0001


def _preset(label, g0, a, b, chi0, c, d):
    inter = InteractionParams(g0=g0, a=a, b=b, omega1=1.0, chi0=chi0, c=c, d=d, omega2=1.0)
    pot = PotentialParams(v1=0.0, v2=0.0, k1=1.0, k2=1.0, f=0.0)
    return CasePreset(label, ModelParams(inter, pot, MU_PRESET))


# A: DC two-body only; B: DC two- and three-body; C: AC+DC two-body;
# D: AC+DC two- and three-body.
CASES = {
    "A": _preset("A", g0=-1.0, a=1.0, b=0.0, chi0=0.0, c=0.0, d=0.0),
    "B": _preset("B", g0=-1.0, a=1.0, b=0.0, chi0=-1.0, c=1.0, d=0.0),
    "C": _preset("C", g0=-1.0, a=1.0, b=1.0, chi0=0.0, c=0.0, d=0.0),
    "D": _preset("D", g0=-1.0, a=1.0, b=1.0, chi0=-1.0, c=1.0, d=1.0),
}


def case_params(label, V=0.0, F=0.0):
    try:
        preset = CASES[label.upper()]
    except KeyError:
        raise ValidationError(f"case must be one of A, B, C, D (got {label!r})") from None
    return preset.at(V, F)


def eval_interactions(p: InteractionParams, x: float):
    """Two- and three-body strengths ``(g, chi)`` at position ``x``."""
    g = p.g0 * (p.a + p.b * math.sin(p.omega1 * x))
    chi = p.chi0 * (p.c + p.d * math.sin(p.omega2 * x))
    return g, chi


def eval_potential(p: PotentialParams, x: float):
    return p.v1 * math.cos(p.k1 * x) + p.v2 * math.cos(p.k2 * x) + p.f * x


def eval_rhs(m: ModelParams, s: State):
    """Right-hand side ``(dphi/dx, dy/dx)`` of the first-order system."""
    g, chi = eval_interactions(m.interactions, s.x)
    v = eval_potential(m.potential, s.x)
    phi2 = s.phi * s.phi
    return s.y, (g * phi2 + chi * phi2 * phi2 - m.mu) * s.phi + v * s.phi
