import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from sticky_spectra.mesh import (
    generate_disk_mesh,
    generate_fan_mesh,
    normalize_weights,
    random_weights,
)

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=15, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def fan12():
    return normalize_weights(generate_fan_mesh(12))


@pytest.fixture(scope="session")
def fan12_random():
    return random_weights(generate_fan_mesh(12), seed=3)


@pytest.fixture(scope="session")
def disk_l3():
    return normalize_weights(generate_disk_mesh(3))


@pytest.fixture(scope="session")
def disk_l4():
    return normalize_weights(generate_disk_mesh(4))


@pytest.fixture(scope="session")
def hyper_l4():
    return normalize_weights(generate_disk_mesh(4, "hyperbolic"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from oracles import ACCEPTANCE_LINES

    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
