import pytest

from zeckdual import SystemPair
from zeckdual.spectra import derived_constants

# the three pairs every cross-module suite exercises
PAIR_RULES = {
    "binary": ((1, 0), (1, 1)),
    "third": ((1, 1, 0), (2, 2, 2)),
    "nonbase": ((2, 0, 1), (10, 4)),
}

# rules used for single-system tests
TEST_RULES = [(1, 0), (1, 1), (1, 1, 0), (2, 2, 2), (2, 0, 1), (10, 4), (2, 3, 0)]


@pytest.fixture(scope="session")
def pairs():
    return {name: SystemPair(sub, sup) for name, (sub, sup) in PAIR_RULES.items()}


@pytest.fixture(scope="session")
def constants(pairs):
    return {name: derived_constants(p) for name, p in pairs.items()}
