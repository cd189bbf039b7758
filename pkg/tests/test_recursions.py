import pytest

from greedytheta.qalgebra import QLaurent, ZERO
from greedytheta.recursions import (bl_count, cp_recursion, kron_positive_recursion,
                                    mm_recursion, negative_recursion)
from greedytheta.scattering import Side


@pytest.mark.parametrize("r,n", [(2, 3), (2, 4), (2, 5), (3, 3)])
def test_corrected_negative_and_pair_recursions(r, n):
    from greedytheta.dyckpath import c_seq

    hi, mid = c_seq(r, n + 1), c_seq(r, n)
    for a in range(hi + 1):
        for b in range(mid // r + 1):
            lhs, rhs = negative_recursion(r, n, a, b, corrected=True)
            assert lhs == rhs
            lhs, rhs = cp_recursion(r, n, a, b, corrected=True)
            assert lhs == rhs


@pytest.mark.parametrize("h", range(1, 6))
def test_corrected_kronecker_recursions(h):
    for a in range((h + 1) // 2 + 1):
        for b in range(h + 2):
            lhs, rhs = kron_positive_recursion(h, a, b, corrected=True)
            assert lhs == rhs
    for a in range(h + 1):
        for b in range(h // 2 + 1):
            lhs, rhs = mm_recursion(h, a, b, corrected=True)
            assert lhs == rhs


def test_printed_negative_recursion_misses_x_axis_lines():
    # class (0, 1) from (-2, -1): only the x-axis bend, which the shifted sum never produces
    lhs, rhs = negative_recursion(2, 3, 0, 1)
    assert lhs == QLaurent({-4: 1, 4: 1})
    assert rhs == ZERO


def test_bl_count_grading():
    total = bl_count(2, 5, 4, 2, 1)
    assert total == sum((bl_count(2, 5, 4, 2, 1, y_mult=s) for s in range(5)), ZERO)
    assert bl_count(2, 5, 4, -1, 0) == ZERO
    assert bl_count(2, 4, 3, 0, 1, Side.POSITIVE).evaluate(1) > 0
