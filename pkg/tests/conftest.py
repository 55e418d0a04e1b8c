import pytest

from dlforest.fixtures import UNI, build_bird_ontology, build_fixture
from dlforest.reasoner import materialize


@pytest.fixture(scope="session")
def university():
    return build_fixture()


@pytest.fixture(scope="session")
def uni_ontology(university):
    return university[0]


@pytest.fixture(scope="session")
def uni_lp(university):
    return university[1]


@pytest.fixture(scope="session")
def uni_materialized(uni_ontology):
    return materialize(uni_ontology)


@pytest.fixture(scope="session")
def uni_hierarchy(uni_materialized):
    return uni_materialized[0]


@pytest.fixture(scope="session")
def uni_ext(uni_materialized):
    return uni_materialized[1]


@pytest.fixture(scope="session")
def birds():
    return build_bird_ontology()


def uni(name: str) -> str:
    return UNI + name
