import pytest

from unitals.cliques import enumerate_maximal_cliques
from unitals.confluence import build_confluence
from unitals.incidence import hermitian_unital, projective_plane


@pytest.fixture(scope="session")
def h2():
    return hermitian_unital(2)


@pytest.fixture(scope="session")
def h3():
    return hermitian_unital(3)


@pytest.fixture(scope="session")
def h4():
    return hermitian_unital(4)


@pytest.fixture(scope="session")
def cg2(h2):
    return build_confluence(h2)


@pytest.fixture(scope="session")
def cg3(h3):
    return build_confluence(h3)


@pytest.fixture(scope="session")
def cg4(h4):
    return build_confluence(h4)


@pytest.fixture(scope="session")
def cliques3(cg3):
    return enumerate_maximal_cliques(cg3)


@pytest.fixture(scope="session")
def cliques4(cg4):
    return enumerate_maximal_cliques(cg4)


@pytest.fixture(scope="session")
def pg3():
    return projective_plane(3)


@pytest.fixture(scope="session")
def pg4():
    return projective_plane(4)
