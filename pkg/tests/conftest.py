import pytest

from parageo.catalog import make_algebra

ALL_IDS = [
    "proj(1)",
    "proj(2)",
    "grass(1,2)",
    "grass(2,2)",
    "conf(1,1)",
    "conf(1,2)",
    "lagr3",
    "su21",
    "xxdot",
]


@pytest.fixture(params=ALL_IDS)
def any_algebra(request):
    return make_algebra(request.param)


@pytest.fixture
def lagr3():
    return make_algebra("lagr3")


@pytest.fixture
def xxdot():
    return make_algebra("xxdot")


@pytest.fixture
def proj1():
    return make_algebra("proj(1)")
