import math

import pytest
from hypothesis import HealthCheck, settings

from gpchaos import IntegratorConfig, InteractionParams, ModelParams, PotentialParams, State

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")


@pytest.fixture
def oscillator():
    """phi'' = -phi: mu = 1 with every other parameter zero."""
    return ModelParams(InteractionParams(), PotentialParams(), mu=1.0)


@pytest.fixture
def free():
    return ModelParams(InteractionParams(), PotentialParams(), mu=0.0)


@pytest.fixture
def s_default():
    return State(0.0, 0.1, 0.0)


@pytest.fixture
def unit_start():
    return State(0.0, 1.0, 0.0)


def circle_cfg(x_end=2 * math.pi, step=0.005, stride=1):
    return IntegratorConfig(step=step, x_end=x_end, record_stride=stride)


# one pass/fail line per acceptance criterion at the end of the run
_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        detail = dict(report.user_properties).get("detail", "")
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}  {detail}")
