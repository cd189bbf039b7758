from hypothesis import given, settings, strategies as st

from greedytheta.dyckpath import cluster_path, maximal_dyck_path
from greedytheta.pairs import (CompatiblePair, Wrap, cascade, enumerate_pairs, expansion_shift,
                               is_compatible, lambda_inverse, lambda_map, rupel_expansion,
                               shadow_set, weight_polynomials, word_weight)
from greedytheta.qalgebra import QLaurent, ZERO
from greedytheta.qtorus import cluster_variable

from oracles import all_pairs

small_paths = st.tuples(st.integers(1, 6), st.integers(0, 6), st.integers(1, 3)).filter(
    lambda t: t[0] + t[1] <= 9)


def test_pair_count_on_p32():
    assert len(enumerate_pairs(maximal_dyck_path(3, 2), 2)) == 13


@settings(max_examples=40, deadline=None)
@given(small_paths)
def test_enumeration_matches_definition(params):
    ell, h, r = params
    P = maximal_dyck_path(ell, h)
    fast = {(p.S1, p.S2) for p in enumerate_pairs(P, r)}
    assert fast == set(all_pairs(P.word, r))


@settings(max_examples=40, deadline=None)
@given(small_paths)
def test_weight_polynomials_sum_pair_weights(params):
    ell, h, r = params
    P = maximal_dyck_path(ell, h)
    direct = {}
    for p in enumerate_pairs(P, r):
        direct[(p.a, p.b)] = direct.get((p.a, p.b), ZERO) + QLaurent.monomial(p.weight)
    assert weight_polynomials(P, r) == {k: v for k, v in sorted(direct.items()) if v}


def test_word_encoding_and_weights():
    P = maximal_dyck_path(3, 2)
    p = CompatiblePair(P, frozenset(), frozenset({1, 2}), 2)
    assert p.word == "hhVhV"
    assert p.weight == word_weight("hhVhV", 2) == 4


@given(st.integers(0, 5), st.integers(0, 5))
def test_h_to_H_swap_raises_weight_by_2r(pre, post):
    # hS H with a balanced segment becomes HS h
    r = 2
    seg = "hhV"
    w = "v" * pre + "h" + seg + "H" + "v" * post
    swapped = "v" * pre + "H" + seg + "h" + "v" * post
    assert word_weight(swapped, r) - word_weight(w, r) == 2 * r


def test_shift_rule():
    assert expansion_shift(maximal_dyck_path(8, 3)) == 1 - 8 - 3
    assert expansion_shift(maximal_dyck_path(4, 2)) == 2 - 6


def test_expansion_equals_cluster_variable():
    assert rupel_expansion(2, 6) == cluster_variable(6, 2)
    assert rupel_expansion(3, 5) == cluster_variable(5, 3)
    assert rupel_expansion(2, -1) == cluster_variable(-1, 2)


def test_cascade_figure_pairings():
    cas = cascade(maximal_dyck_path(16, 6), {2, 3, 4, 5, 6}, 3)
    assert {j: cas.partner(j) for j in range(2, 7)} == {2: 4, 3: 3, 4: 9, 5: 12, 6: 2}
    S2 = {1, 2, 4, 5, 7, 8, 16, 18, 19, 21, 22, 23}
    cas = cascade(maximal_dyck_path(24, 23), S2, 2)
    assert {j: cas.partner(j) for j in sorted(S2)} == {
        1: 1, 2: 12, 4: 4, 5: 11, 7: 7, 8: 10, 16: 16, 18: 18, 19: 15, 21: 21, 22: 14, 23: 13}
    assert cas.arcs_noncrossing()


def test_shadow_and_cascade_sizes_agree():
    P = maximal_dyck_path(16, 6)
    S2 = {2, 3, 4, 5, 6}
    assert len(shadow_set(P, S2, 3)) == len(cascade(P, S2, 3).edges) == 15


def test_linear_and_cyclic_shadows_differ_on_wrapping_verticals():
    P = maximal_dyck_path(5, 4)
    assert shadow_set(P, {1, 2}, 2) == {1, 2, 3, 5}
    assert shadow_set(P, {1, 2}, 2, Wrap.LINEAR) == {1, 2, 3, 4, 5}


def test_lambda_figure():
    p = CompatiblePair(cluster_path(3, 6), frozenset({18, 20, 21}), frozenset(range(1, 7)), 3)
    assert sorted(lambda_map(p).S1) == [17, 18, 21]
    assert lambda_inverse(lambda_map(p)) == p


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 5), (2, 6), (3, 4), (3, 5)]), st.data())
def test_lambda_round_trip(rn, data):
    r, n = rn
    P = cluster_path(r, n)
    positive = [p for p in enumerate_pairs(P, r) if p.is_positive()]
    p = data.draw(st.sampled_from(positive))
    lp = lambda_map(p)
    assert is_compatible(P, lp.S1, lp.S2, r)
    assert lambda_inverse(lp) == p
