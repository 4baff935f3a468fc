import pytest
from hypothesis import HealthCheck, settings

from ghilb.rings import QQ, PolyRing

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def Qt():
    return PolyRing(QQ, ["t"])


@pytest.fixture
def Quv():
    return PolyRing(QQ, ["u", "v"])


@pytest.fixture
def Qs():
    return PolyRing(QQ, ["s"])
