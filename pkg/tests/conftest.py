import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SEED = int(os.environ.get("TORICNASH_SEED", "20240611"))


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=None, help="seed for the randomized suites")


def pytest_configure(config):
    global SEED
    if config.getoption("--seed") is not None:
        SEED = config.getoption("--seed")


@pytest.fixture
def rng():
    return random.Random(SEED)


def example_cone_rays(e):
    return [(1, 0, 0), (0, 1, 0), (1, 1, e)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and getattr(mod, "RESULTS", None):
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
