import pytest
from hypothesis import HealthCheck, settings

from semispec.corpus import corpus, enumerate_semirings, named

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CORPUS = corpus(3)
CORPUS4 = corpus(4)


def corpus_ids(items):
    return [S.name for S in items]


@pytest.fixture(params=CORPUS, ids=corpus_ids(CORPUS))
def S(request):
    return request.param


@pytest.fixture(params=CORPUS4, ids=corpus_ids(CORPUS4))
def S4(request):
    return request.param


@pytest.fixture
def B():
    return named("B")


@pytest.fixture
def chain3():
    return named("chain3")


@pytest.fixture
def N3():
    return named("N3")


@pytest.fixture
def U3():
    return named("U3")


@pytest.fixture
def D():
    return named("D")
