import random

import pytest

from src.services.catalog import resolve_system
from src.services.star_uea import StarSession


@pytest.fixture(scope="session")
def sessions():
    """Star-product sessions shared across the test run, built on first use."""
    cache = {}

    def get(name: str) -> StarSession:
        if name not in cache:
            cache[name] = StarSession(resolve_system(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def s2_session(sessions):
    return sessions("S2")


@pytest.fixture(scope="session")
def so3_session(sessions):
    return sessions("so3")


@pytest.fixture(scope="session")
def r2_session(sessions):
    return sessions("R2")


@pytest.fixture
def rng():
    return random.Random(12345)
