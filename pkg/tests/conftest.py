import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from holevolab import config
from holevolab.operators import ghz

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ghz_rho():
    return ghz().density()


@pytest.fixture(autouse=True)
def bits():
    # every test starts in base 2, whatever a previous test did
    with config.log_base(2):
        yield


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
