import math

import pytest

from outagekit import Annulus, ChannelParams, bundled_region

# Pass/fail lines collected by the acceptance tests; echoed after the run
# so they are visible without -s.
ACCEPTANCE_LINES = pytest.StashKey()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def default_params():
    """The parameter set used throughout the bundled experiments."""
    return ChannelParams(alpha=3.2, beta=1.0, snr=10.0, p=1.0)


@pytest.fixture(scope="session")
def quartic_params():
    """alpha=4, beta=1, noiseless: the regime with arctan closed forms."""
    return ChannelParams(alpha=4.0, beta=1.0, snr=math.inf, p=1.0)


@pytest.fixture(scope="session")
def disk2():
    return bundled_region("disk2")


@pytest.fixture(scope="session")
def triangle():
    return bundled_region("triangle")


@pytest.fixture(scope="session")
def irregular():
    return bundled_region("irregular")


@pytest.fixture(scope="session")
def unit_annulus():
    return Annulus(1.0, 2.0)
