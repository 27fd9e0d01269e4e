import pytest

from dcfactor.cosets import build_coset_space
from dcfactor.perm import PermGroup, Permutation, point_stabilizer, symmetric_group
from dcfactor.shipped import load_shipped


def perm(text, degree):
    return Permutation.from_cycles(text, degree)


@pytest.fixture(scope="session")
def s3_space():
    return build_coset_space(symmetric_group(3), PermGroup([perm("(1,2)", 3)]))


@pytest.fixture(scope="session")
def s4_space():
    s4 = symmetric_group(4)
    return build_coset_space(s4, point_stabilizer(s4, 4))


@pytest.fixture(scope="session")
def shipped_space():
    cache = {}

    def get(group, sub):
        if (group, sub) not in cache:
            cache[group, sub] = build_coset_space(load_shipped(group), load_shipped(sub))
        return cache[group, sub]

    return get
