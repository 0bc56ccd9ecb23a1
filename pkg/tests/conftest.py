import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "monoidvar", max_examples=1000, derandomize=True, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("monoidvar")


@pytest.fixture
def rng():
    return random.Random(0)
