import itertools

import numpy as np
import pytest

from dcfactor.coxeter import (CoxeterType, build_coxeter, coxeter_matrix, evaluate,
                              find_reduced_word, longest_element, order_formula,
                              parabolic_coset_action, parabolic_coset_space,
                              parabolic_factorization_check)
from dcfactor.errors import InputError, ResourceError
from dcfactor.factor import (build_hyperoctahedral_fixture, check_product_three,
                             conjugate_product_brute_force, triple_check)
from dcfactor.perm import Permutation
from dcfactor.suites import DEFAULT_TABLE_TYPES, expected_three_conjugates

SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "I2(5)", "I2(8)"]

# number of reflections: n(n+1)/2, n^2, n(n-1), 36, 24, 15, 60, m
POSITIVE_ROOTS = {
    "A1": 1, "A4": 10, "A6": 21, "B2": 4, "B5": 25, "D4": 12, "D6": 30, "E6": 36,
    "E7": 63, "E8": 120, "F4": 24, "H3": 15, "H4": 60, "I2(5)": 5, "I2(12)": 12,
}


@pytest.mark.parametrize("text, family, n, rank", [
    ("A1", "A", 1, 1), ("B7", "B", 7, 7), ("D4", "D", 4, 4), ("E8", "E", 8, 8),
    ("F4", "F", 4, 4), ("H3", "H", 3, 3), ("I2(7)", "I2", 7, 2), (" A3 ", "A", 3, 3),
])
def test_parse_type(text, family, n, rank):
    t = CoxeterType.parse(text)
    assert (t.family, t.n, t.rank) == (family, n, rank)
    assert str(t) == text.strip()


@pytest.mark.parametrize("text", ["A0", "B1", "D3", "E5", "E9", "F3", "H2", "H5",
                                  "I2(2)", "G2", "", "a3", "I2(x)"])
def test_parse_rejects(text):
    with pytest.raises(InputError):
        CoxeterType.parse(text)


def test_coxeter_matrix_b3():
    assert coxeter_matrix(CoxeterType.parse("B3")).tolist() == [[1, 3, 2], [3, 1, 4], [2, 4, 1]]


@pytest.mark.parametrize("name, count", sorted(POSITIVE_ROOTS.items()))
def test_root_counts(name, count):
    cs = build_coxeter(name)
    assert cs.npositive == count
    assert cs.nroots == 2 * count
    assert cs.length(cs.w0) == count


@pytest.mark.parametrize("name", SMALL + ["A6", "D6", "E6", "H4", "E7"])
def test_order_from_chain_matches_formula(name):
    cs = build_coxeter(name)
    assert cs.order == order_formula(cs.type)


@pytest.mark.parametrize("name", SMALL)
def test_coxeter_relations(name):
    cs = build_coxeter(name)
    m = cs.coxeter_matrix
    for i, j in itertools.product(range(cs.rank), repeat=2):
        st = evaluate(cs, [i, j])
        assert cs.element_order(st) == m[i, j]


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "I2(6)", "D4"])
def test_length_changes_by_one(name):
    cs = build_coxeter(name)
    table = cs.elements()
    lens = table.length
    for i in range(cs.rank):
        assert np.all(np.abs(lens[table.rmul[i]] - lens) == 1)
        assert np.all(np.abs(lens[table.lmul[i]] - lens) == 1)
    for k, w in enumerate(table.elements):
        assert cs.length(w) == lens[k]


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "F4"])
def test_reduced_words_round_trip(name):
    cs = build_coxeter(name)
    for w in cs.elements().elements:
        word = find_reduced_word(cs, w)
        assert len(word) == cs.length(w)
        assert np.array_equal(evaluate(cs, word), w)
        assert cs.is_reduced(word)


def test_non_reduced_word():
    cs = build_coxeter("A2")
    assert not cs.is_reduced([0, 0])
    assert not cs.is_reduced([0, 1, 0, 1])
    assert cs.is_reduced([0, 1, 0])


def test_evaluate_rejects_bad_letter():
    with pytest.raises(InputError):
        evaluate(build_coxeter("A2"), [0, 2])


def test_a2_longest_word():
    cs = build_coxeter("A2")
    assert find_reduced_word(cs, longest_element(cs)) == [0, 1, 0]


@pytest.mark.parametrize("name", ["A1", "A4", "B3", "D5", "F4", "H3", "I2(7)", "E6"])
def test_longest_element(name):
    cs = build_coxeter(name)
    w0 = longest_element(cs)
    assert all(cs.has_right_descent(w0, i) and cs.has_left_descent(w0, i)
               for i in range(cs.rank))
    assert np.array_equal(cs.multiply(w0, w0), cs.identity())
    # w0 sends every positive root to a negative one
    assert not cs.positive[w0[cs.positive]].any()


def test_elements_respect_bound():
    with pytest.raises(ResourceError):
        build_coxeter("E6").elements(bound=1000)


@pytest.mark.parametrize("name, omitted, index", [
    ("A3", 2, 4), ("A5", 4, 6), ("B4", 0, 8), ("D4", 1, 24), ("E6", 0, 27),
    ("E6", 3, 720), ("H3", 2, 12), ("F4", 0, 24),
])
def test_parabolic_index(name, omitted, index):
    cs = build_coxeter(name)
    G, A = parabolic_coset_action(cs, omitted)
    assert G.degree == index
    assert G.order() // A.order() == index


@pytest.mark.parametrize("name, omitted", [("A3", 0), ("B3", 1), ("H3", 0), ("D4", 1), ("E6", 0)])
def test_quotient_action_is_w_image(name, omitted):
    cs = build_coxeter(name)
    G, A = parabolic_coset_action(cs, omitted)
    # maximal parabolics of irreducible W are core-free, so the action is faithful
    assert G.order() == cs.order


@pytest.mark.parametrize("name", DEFAULT_TABLE_TYPES)
def test_three_conjugates_verdict(name):
    cs = build_coxeter(name)
    v = parabolic_factorization_check(cs)
    assert v.verdict == expected_three_conjugates(cs.type)
    assert set(v.witness_words) == set(v.succeeding_parabolics)


def test_three_conjugates_verdict_e7():
    # E8 runs in the acceptance suite only
    v = parabolic_factorization_check(build_coxeter("E7"), 10**7)
    assert v.verdict and v.indices[6] == 56


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "D4", "H3", "I2(5)", "B2", "F4"])
def test_verdicts_against_brute_force(name):
    """Every suborbit verdict agrees with an explicit product of three subgroups."""
    cs = build_coxeter(name)
    v = parabolic_factorization_check(cs)
    for k in range(cs.rank):
        space = parabolic_coset_space(cs, k)
        G, A = space.group, space.subgroup
        if G.order() > 2000:
            continue
        e = Permutation.identity(G.degree)
        wins = [j for j in range(1, space.rank)
                if conjugate_product_brute_force(G, A, [e, space.dc_rep(j), e])]
        assert wins == v.succeeding[k]


@pytest.mark.parametrize("name", ["A4", "B3", "D4", "E6"])
def test_witness_words_give_factorization(name):
    cs = build_coxeter(name)
    v = parabolic_factorization_check(cs)
    for k, word in v.witness_words.items():
        G, A = parabolic_coset_action(cs, k)
        x = Permutation.identity(G.degree)
        for i in word:
            x = x * G.generators[i]
        space = parabolic_coset_space(cs, k)
        assert triple_check(space, x)


@pytest.mark.parametrize("n", [3, 4])
def test_b_series_matches_signed_permutation_fixture(n):
    """Omitting the first node of B_n leaves a coordinate stabilizer."""
    cs = build_coxeter(f"B{n}")
    v = parabolic_factorization_check(cs)
    assert v.indices[0] == 2 * n
    C, C1, Ci = build_hyperoctahedral_fixture(n, 2)
    assert check_product_three(C, C1, Ci, C1) == bool(v.succeeding[0])
    assert not check_product_three(C, C1, C1, C1)
