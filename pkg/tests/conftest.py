import mpmath
import pytest
from hypothesis import settings

from pulsar_green.solver import ProblemSpec

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

mpmath.mp.dps = 40


@pytest.fixture(scope="session")
def fig2_spec():
    return ProblemSpec(0.4, 0.9)


@pytest.fixture(scope="session")
def fig3_spec():
    return ProblemSpec(4.0, 0.4)
