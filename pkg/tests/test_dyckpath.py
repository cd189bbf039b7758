import pytest
from hypothesis import given, strategies as st

from greedytheta.dyckpath import (CSeq, DyckPath, c_seq, c_value, cluster_path, general_recursion,
                                  maximal_dyck_path, monomial_path)

from oracles import maximal_word


def test_c_sequence_values():
    assert [c_seq(2, n) for n in range(8)] == [-1, 0, 1, 2, 3, 4, 5, 6]
    assert [c_seq(3, n) for n in range(8)] == [-1, 0, 1, 3, 8, 21, 55, 144]
    assert c_seq(3, -1) == -3


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_c_identities(r):
    assert CSeq(r).identities_hold(10)


@given(st.integers(1, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(0, 10))
def test_general_recursion_is_a_c_combination(r, alpha, beta, k):
    assert general_recursion(r, alpha, beta, k) == c_seq(r, k + 1) * beta - c_seq(r, k) * alpha


def test_c_value():
    assert c_value(3, 5, 2, 1) == 2 * 21 + 8


def test_maximal_paths_match_dominating_word():
    for ell in range(7):
        for h in range(7):
            if ell + h <= 11 and (ell or not h):
                assert maximal_dyck_path(ell, h).word == maximal_word(ell, h)


@given(st.integers(1, 30), st.integers(0, 30))
def test_maximal_path_shape(ell, h):
    P = maximal_dyck_path(ell, h)
    assert (P.ell, P.h) == (ell, h)
    assert P.is_below_diagonal()


def test_cluster_and_monomial_paths():
    assert (cluster_path(3, 6).ell, cluster_path(3, 6).h) == (21, 8)
    mp = monomial_path(3, 3, 2, 1)
    assert (mp.path.ell, mp.path.h) == (2 * 8 + 3, 2 * 3 + 1)
    assert len(mp.blocks) == 3
    assert "".join(b.path.word for b in mp.blocks) == mp.path.word
    with pytest.raises(ValueError):
        monomial_path(2, 3, 0, 0)


def test_cyclic_subpath_counts():
    P = maximal_dyck_path(3, 2)  # EENEN
    e, f = P.eta(1), P.nu(1)
    assert P.cyclic_subpath_counts(e, f) == (2, 1)
    # from the last vertical around to the first horizontal
    assert P.cyclic_subpath_counts(P.nu(2), P.eta(1)) == (0, 0)
    assert P.cyclic_subpath_counts(P.eta(3), P.eta(1)) == (1, 1)


def test_bad_words_rejected():
    with pytest.raises(ValueError):
        DyckPath("ENX")
