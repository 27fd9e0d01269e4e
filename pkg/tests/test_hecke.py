import dataclasses

import numpy as np
import pytest

from dcfactor.cosets import build_coset_space
from dcfactor.errors import ConsistencyError, InputError
from dcfactor.factor import square_dc_check
from dcfactor.hecke import (boolean_constants, check_mass, group_algebra_oracle,
                            intersection_numbers, squares_to_group)
from dcfactor.perm import (PermGroup, Permutation, alternating_group, point_stabilizer,
                           symmetric_group)


def P(text, n):
    return Permutation.from_cycles(text, n)


def _spaces():
    s4, s5, a6 = symmetric_group(4), symmetric_group(5), alternating_group(6)
    return {
        "S3/<(1,2)>": lambda: build_coset_space(symmetric_group(3), PermGroup([P("(1,2)", 3)])),
        "S4/S3": lambda: build_coset_space(s4, point_stabilizer(s4, 4)),
        "S4/<(1,2)>": lambda: build_coset_space(s4, PermGroup([P("(1,2)", 4)])),
        "S5/S4": lambda: build_coset_space(s5, point_stabilizer(s5, 5)),
        "S4/D8": lambda: build_coset_space(s4, PermGroup([P("(1,2,3,4)", 4), P("(1,3)", 4)])),
        "A5/C5": lambda: build_coset_space(alternating_group(5),
                                           PermGroup([P("(1,2,3,4,5)", 5)])),
        "A6/A4": lambda: build_coset_space(a6, PermGroup([P("(1,2,3)", 6), P("(2,3,4)", 6)])),
    }


SPACES = _spaces()


@pytest.fixture(scope="module", params=sorted(SPACES))
def space(request):
    return SPACES[request.param]()


def test_matches_group_algebra_oracle(space):
    assert np.array_equal(intersection_numbers(space).tensor, group_algebra_oracle(space))


def test_shipped_psl27_matches_oracle(shipped_space):
    cs = shipped_space("psl27", "psl27_borel")
    assert np.array_equal(intersection_numbers(cs).tensor, group_algebra_oracle(cs))


@pytest.mark.parametrize("name, expected", [
    ("S3/<(1,2)>", [[0, 2], [1, 1]]),
    ("S4/S3", [[0, 3], [1, 2]]),
])
def test_known_collapsed_matrix(name, expected):
    assert intersection_numbers(SPACES[name]()).matrices[1].tolist() == expected


def test_trivial_suborbit_is_identity(space):
    ca = intersection_numbers(space)
    r = ca.rank
    assert np.array_equal(ca.matrices[0], np.eye(r, dtype=np.int64))
    # e_0 is the unit of the algebra
    for y in range(r):
        assert np.array_equal(ca.tensor[0, y], np.eye(r, dtype=np.int64)[y])
        assert np.array_equal(ca.tensor[y, 0], np.eye(r, dtype=np.int64)[y])


def test_row_sums_are_subdegrees(space):
    ca = intersection_numbers(space)
    d = np.array(ca.subdegrees)
    for y in range(ca.rank):
        assert np.array_equal(ca.matrices[y].sum(axis=1), np.full(ca.rank, d[y]))


def test_mass_conservation(space):
    ca = intersection_numbers(space)
    d = np.array(ca.subdegrees)
    assert np.array_equal(ca.tensor @ d, np.outer(d, d))


def test_squares_agree_with_orbit_criterion(space):
    ca = intersection_numbers(space)
    for i in range(ca.rank):
        assert squares_to_group(ca, i) == square_dc_check(space, space.dc_rep(i))
        assert squares_to_group(ca, i) == bool(np.all(ca.tensor[i, i] != 0))


def test_boolean_constants_agree_with_orbit_labels(space):
    ca = intersection_numbers(space)
    c = boolean_constants(ca)
    for x in range(ca.rank):
        for y in range(ca.rank):
            labels = space.dc_product_labels(x, space.dc_rep(y))
            assert set(np.flatnonzero(c[x, y]).tolist()) == set(labels)


def test_squares_rejects_bad_index(s4_space):
    ca = intersection_numbers(s4_space)
    with pytest.raises(InputError):
        squares_to_group(ca, ca.rank)
    with pytest.raises(InputError):
        squares_to_group(ca, -1)


def test_corrupted_tensor_is_detected(s4_space):
    ca = intersection_numbers(s4_space)
    bad = ca.tensor.copy()
    bad[1, 1, 1] += 1
    with pytest.raises(ConsistencyError):
        check_mass(dataclasses.replace(ca, tensor=bad))


def test_oracle_respects_bound(s4_space):
    with pytest.raises(InputError):
        group_algebra_oracle(s4_space, bound=10)
