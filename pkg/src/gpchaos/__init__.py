"""Chaos in the stationary Gross-Pitaevskii equation under a tilted bichromatic lattice."""

__version__ = "0.1.0"

from .errors import (DegenerateSeparation, GridMiss, InvalidConfig, ParseError,  # noqa: E402
                     ValidationError)
from .indicators import (LyapunovResult, PoincareSection, lyapunov_benettin,  # noqa: E402
                         lyapunov_variational, phase_portrait, poincare_section,
                         potential_profile, wavefunction_profile)
from .integrator import IntegratorConfig, Trajectory, integrate, rk4_step  # noqa: E402
from .model import (CASES, CasePreset, InteractionParams, ModelParams,  # noqa: E402
                    PotentialParams, State, case_params, eval_interactions,
                    eval_potential, eval_rhs)
from .regimes import (GridAxis, LyapunovConfig, Regime, RegimeMap,  # noqa: E402
                      RegimeThresholds, classify, regime_bands, scan)
