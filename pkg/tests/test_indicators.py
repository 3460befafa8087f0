import math
import warnings

import numpy as np
import pytest

from gpchaos import (IntegratorConfig, InvalidConfig, PotentialParams, State, case_params,
                     lyapunov_benettin, lyapunov_variational, phase_portrait, poincare_section,
                     potential_profile, wavefunction_profile)
from gpchaos.indicators import lyapunov

from .conftest import circle_cfg

REGULAR_A = dict(case="A", V=0.5, F=0.0)


class TestPortrait:
    def test_oscillator_circle(self, oscillator, unit_start):
        pts, traj = phase_portrait(oscillator, unit_start, IntegratorConfig(x_end=200.0, record_stride=7), 0.1)
        r = np.hypot(pts[:, 0], pts[:, 1])
        assert np.max(np.abs(r - 1.0)) < 1e-6
        assert len(pts) == len(traj) - int(len(traj) * 0.1)

    def test_zero_ic(self):
        pts, _ = phase_portrait(case_params("B", 0.3, 0.3), State(0, 0, 0), IntegratorConfig(x_end=50.0), 0.2)
        assert not pts.any()

    def test_case_a_regular_bounded(self, s_default):
        pts, traj = phase_portrait(case_params("A", 0.5, 0.0), s_default, IntegratorConfig(record_stride=10), 0.1)
        assert not traj.terminated_early
        assert np.max(np.hypot(pts[:, 0], pts[:, 1])) < 5.0

    def test_discard_range(self, oscillator, unit_start):
        with pytest.raises(InvalidConfig):
            phase_portrait(oscillator, unit_start, circle_cfg(), 1.0)


class TestPoincare:
    def test_oscillator_returns_to_start(self, oscillator, unit_start):
        sec = poincare_section(oscillator, unit_start, IntegratorConfig(x_end=100.0), 2 * math.pi)
        assert np.max(np.abs(sec.phi - 1.0)) < 1e-6
        assert np.max(np.abs(sec.y)) < 1e-6

    def test_zero_ic(self):
        sec = poincare_section(case_params("D", 0.5, 0.5), State(0, 0, 0), IntegratorConfig(x_end=100.0))
        assert not sec.points.any()

    @pytest.mark.parametrize("x_s,x0,x_end", [(2 * math.pi, 0.0, 300.0), (1.0, 3.3, 57.2), (0.7, 0.0, 14.0)])
    def test_point_count_and_positions(self, s_default, x_s, x0, x_end):
        sec = poincare_section(case_params("A", 0.5, 0.2), s_default, IntegratorConfig(x_end=x_end), x_s, x0)
        assert len(sec) == math.floor((x_end - x0) / x_s) + 1
        assert sec.x[0] == x0
        assert np.allclose(np.diff(sec.x), x_s)

    def test_section_matches_trajectory(self, s_default):
        # with x_s a whole number of steps the section is the strided trajectory
        from gpchaos import integrate
        m = case_params("C", 0.4, 0.6)
        cfg = IntegratorConfig(x_end=60.0)
        sec = poincare_section(m, s_default, cfg, 1.0)
        traj = integrate(m, s_default, IntegratorConfig(x_end=60.0, record_stride=200))
        np.testing.assert_allclose(sec.phi, traj.phi, rtol=1e-9, atol=1e-12)

    def test_section_shorter_than_step(self, oscillator, unit_start):
        with pytest.raises(InvalidConfig):
            poincare_section(oscillator, unit_start, IntegratorConfig(step=0.1, x_end=10), 0.05)

    @pytest.mark.xfail(strict=True, reason="case B sections stay compact: observed area ratio 1.2-8.5 over "
                                           "V, F in [0.1, 1], never above 10")
    def test_case_b_cloud_larger_than_regular_a(self, s_default):
        cfg = IntegratorConfig()
        ref = poincare_section(case_params(**REGULAR_A), s_default, cfg)
        area = lambda s: np.ptp(s.phi) * np.ptp(s.y)  # noqa: E731
        for V, F in [(0.1, 0.5), (0.5, 0.5), (0.9, 1.0)]:
            sec = poincare_section(case_params("B", V, F), s_default, cfg)
            assert area(sec) > 10 * area(ref)


class TestProfiles:
    def test_flat_potential(self):
        prof = potential_profile(PotentialParams(), 0, 10, 11)
        assert not prof[:, 1].any()

    def test_pure_tilt_endpoints(self):
        prof = potential_profile(PotentialParams(0, 0, 1, 1, 1.0), 0, 1, 2)
        np.testing.assert_array_equal(prof, [[0, 0], [1, 1]])

    def test_tilted_lattice_at_two_pi(self):
        prof = potential_profile(PotentialParams(0.5, 0.5, 1, 1, 0.2), 0, 2 * math.pi, 5)
        assert prof[-1, 1] == pytest.approx(1 + 0.4 * math.pi, abs=1e-12)
        assert prof[-1, 1] == pytest.approx(2.25664, abs=1e-5)

    def test_profile_preconditions(self):
        with pytest.raises(InvalidConfig):
            potential_profile(PotentialParams(), 0, 1, 1)
        with pytest.raises(InvalidConfig):
            potential_profile(PotentialParams(), 1, 1, 5)

    def test_wavefunction_cosine(self, oscillator, unit_start):
        prof, _ = wavefunction_profile(oscillator, unit_start, IntegratorConfig(x_end=20.0))
        assert np.max(np.abs(prof[:, 1] - np.cos(prof[:, 0]))) < 1e-6

    def test_wavefunction_zero(self):
        prof, _ = wavefunction_profile(case_params("C", 0.5, 0.5), State(0, 0, 0), IntegratorConfig(x_end=30.0))
        assert not prof[:, 1].any()

    @pytest.mark.xfail(strict=True, reason="observed lag-2pi autocorrelation 0.98: the case A profile at "
                                           "F=0.9 stays quasi-periodic")
    def test_case_a_high_tilt_profile_irregular(self, s_default):
        prof, _ = wavefunction_profile(case_params("A", 0.5, 0.9), s_default, IntegratorConfig())
        phi = prof[len(prof) // 10:, 1]
        phi = phi - phi.mean()
        lag = round(2 * math.pi / 0.005)
        assert np.dot(phi[:-lag], phi[lag:]) / np.dot(phi, phi) < 0.5


class TestLyapunov:
    @pytest.mark.parametrize("method", ["benettin", "variational"])
    def test_linear_oscillator_null(self, oscillator, unit_start, method):
        res = lyapunov(method, oscillator, unit_start, 1000.0)
        assert abs(res.lambda_max) <= 0.01
        assert not res.diverged

    def test_result_bookkeeping(self, s_default):
        res = lyapunov_benettin(case_params("C", 0.5, 0.5), s_default, 100.0, renorm_interval=2.0)
        assert res.lambda_max == res.history[-1]
        assert res.n_renorms == len(res.history) == 45
        assert res.x_renorm[0] == 12.0 and res.x_renorm[-1] == 100.0
        assert res.delta0 == 1e-6 and res.method == "benettin"

    def test_explicit_discard(self, s_default):
        res = lyapunov_benettin(case_params("A", 0.5, 0.1), s_default, 100.0, discard=0.0)
        assert res.n_renorms == 100

    def test_case_a_weak_tilt_regular(self, s_default):
        assert lyapunov_benettin(case_params("A", 0.5, 0.05), s_default, 1000.0).lambda_max < 0.05

    @pytest.mark.xfail(strict=True, reason="observed lambda_max ~0.002 at case A, V=0.5, F=0.9")
    def test_case_a_strong_tilt_chaotic(self, s_default):
        assert lyapunov_benettin(case_params("A", 0.5, 0.9), s_default, 1000.0).lambda_max > 5

    def test_variational_zero_ic_tangent_oscillator(self):
        res = lyapunov_variational(case_params("A", 0.0, 0.0), State(0, 0, 0), 1000.0)
        assert res.lambda_max <= 0.01

    def test_methods_agree_case_b(self, s_default):
        m = case_params("B", 0.5, 0.5)
        b = lyapunov_benettin(m, s_default, 1000.0).lambda_max
        v = lyapunov_variational(m, s_default, 1000.0).lambda_max
        assert b == pytest.approx(v, rel=0.1)

    def test_divergence_flagged(self, s_default):
        res = lyapunov_benettin(case_params("D", 0.5, 0.9), s_default, 1000.0)
        assert res.diverged
        assert res.lambda_max == res.history[-1]
        assert res.x_renorm[-1] < 1000.0

    def test_divergence_before_any_renorm_gives_nan(self):
        from gpchaos import InteractionParams, ModelParams, PotentialParams
        m = ModelParams(InteractionParams(g0=1.0, a=1.0), PotentialParams(), 0.0)
        res = lyapunov_benettin(m, State(0, 5.0, 0), 100.0)
        assert res.diverged and math.isnan(res.lambda_max) and res.n_renorms == 0

    def test_degenerate_separation_restarts(self, free):
        # free motion with y=0: the phi offset never grows nor shrinks, but an
        # underflowing delta0 collapses onto the fiducial
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            res = lyapunov_benettin(free, State(0, 1.0, 0), 20.0, delta0=1e-300)
        from gpchaos import DegenerateSeparation
        assert any(issubclass(w.category, DegenerateSeparation) for w in caught)
        assert res.n_renorms == 0

    @pytest.mark.parametrize("kw", [dict(delta0=0.0), dict(renorm_interval=0.0), dict(renorm_interval=20.0)])
    def test_invalid(self, oscillator, unit_start, kw):
        with pytest.raises(InvalidConfig):
            lyapunov_benettin(oscillator, unit_start, 100.0, **kw)
