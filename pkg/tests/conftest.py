import pytest

from lalg.constructions import enumerate_all, fixtures


@pytest.fixture(scope="session")
def fixture_map():
    return {f.name: f for f in fixtures()}


@pytest.fixture(scope="session")
def algebras(fixture_map):
    return {name: f.algebra for name, f in fixture_map.items()}


@pytest.fixture(scope="session")
def b2(algebras):
    return algebras["B2"]


@pytest.fixture(scope="session")
def diamond(algebras):
    return algebras["diamond"]


@pytest.fixture(scope="session")
def chain3(algebras):
    return algebras["chain3"]


@pytest.fixture(scope="session")
def omega3(algebras):
    return algebras["omega3"]


@pytest.fixture(scope="session")
def small_corpus():
    """Every L-algebra with at most 3 elements (unit at index 0)."""
    return [a for n in (1, 2, 3) for a in enumerate_all(n)]
