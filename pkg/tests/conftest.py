import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("facetlab", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("facetlab")


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)
