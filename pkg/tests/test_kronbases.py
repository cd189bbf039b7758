from fractions import Fraction

import pytest

from greedytheta.kronbases import (Method, Normalization, basis_report, calibrate_normalization,
                                   conjugate_pair, s_element, theta_mm, z_element)
from greedytheta.dyckpath import maximal_dyck_path
from greedytheta.pairs import enumerate_pairs
from greedytheta.qtorus import ConventionConfig, ExchangeSide, TorusElement

MIRROR = ConventionConfig(-1, ExchangeSide.NEW_ON_RIGHT)


def test_classical_values_follow_chebyshev():
    # z_1 -> 3 at q = x1 = x2 = 1, then z_(n+1) = 3 z_n - z_(n-1) with z_0 = 2
    expected = [2, 3]
    for _ in range(5):
        expected.append(3 * expected[-1] - expected[-2])
    assert [z_element(n).evaluate(1, 1, 1) for n in range(1, 7)] == expected[1:]


def test_product_rule():
    z1 = z_element(1)
    for n in range(2, 6):
        assert z1 * z_element(n) == z_element(n + 1) + z_element(n - 1)


def test_s_below_zero_vanishes():
    assert s_element(-1) == TorusElement({})
    with pytest.raises(ValueError):
        z_element(0)


def test_normalization_is_unique():
    norm = calibrate_normalization()
    assert norm == Normalization(Fraction(1, 2), 1, 0)
    assert calibrate_normalization(MIRROR).weyl == -1


@pytest.mark.parametrize("cfg", [ConventionConfig(), MIRROR])
@pytest.mark.parametrize("m", range(1, 6))
def test_three_constructions_agree(cfg, m):
    rep = basis_report(m, cfg)
    assert rep.equal == (True, True, True)
    assert rep.via_pairs.is_bar_invariant()


def test_methods_by_name():
    assert theta_mm(2, "Lines") == theta_mm(2, Method.PAIRS)
    with pytest.raises(ValueError):
        theta_mm(0)


def test_conjugation_is_an_involution():
    P = maximal_dyck_path(4, 4)
    for p in enumerate_pairs(P, 2):
        assert conjugate_pair(conjugate_pair(p)) == p
