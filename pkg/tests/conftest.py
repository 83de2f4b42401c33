import pytest

from dqra import catalogue_names, load_algebra, load_representation
from dqra.catalogue import (
    antichain_example_generators,
    antichain_example_structure,
)

ALL_NAMES = list(catalogue_names())

CHAIN_NAMES = ["D^3_{1,1}", "D^4_{1,1}", "D^4_{1,2}", "D^5_{1,4}", "D^5_{1,5}"]
TABLE_PARENTS = ["D^4_{3,1}", "D^6_{3,2}", "D^6_{3,4}", "D^6_{4,3}", "D^6_{4,4}"]
SIX = "D^6_{3,5,2}"


@pytest.fixture(scope="session")
def algebras():
    return {name: load_algebra(name) for name in ALL_NAMES}


@pytest.fixture(scope="session")
def six(algebras):
    return algebras[SIX]


@pytest.fixture(scope="session")
def six_embedding():
    return load_representation(SIX)


@pytest.fixture(scope="session")
def example_structure():
    return antichain_example_structure()


@pytest.fixture(scope="session")
def example_generators(example_structure):
    return antichain_example_generators(example_structure)
