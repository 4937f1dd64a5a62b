import pytest

from roughnelson import catalog
from roughnelson.relation import Relation, Universe


def as_pairs(rel: Relation) -> set[tuple[str, str]]:
    return {tuple(p) for p in rel.label_pairs()}


def from_pairs(labels, pairs) -> Relation:
    return Relation.from_pairs(Universe(tuple(labels)), list(pairs))


@pytest.fixture
def e1():
    return catalog.e1()


@pytest.fixture
def e2():
    return catalog.e2()


@pytest.fixture
def e3():
    return catalog.e3()
