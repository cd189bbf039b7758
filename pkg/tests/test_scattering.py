from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from greedytheta.qalgebra import QLaurent
from greedytheta.scattering import (BrokenLine, FailureKind, Side, WallKind, angular_momentum,
                                    enumerate_BL, negative_closed_form, negative_wall,
                                    positive_wall, realize_geometrically, realize_somewhere,
                                    slope_one_wall)

# printed example: the line from (-12, -11) through (-6, -7) and (-2, -5) to (-2, -1)
EXAMPLE_WEIGHT = QLaurent({-60 + 8 * i: c for i, c in
                           enumerate([1, 2, 3, 4, 5, 6, 7, 8, 8, 7, 6, 5, 4, 3, 2, 1])})


def example_line() -> BrokenLine:
    for g in enumerate_BL(2, 12, 11, 5, 5):
        if g.exponents == ((-12, -11), (-6, -7), (-2, -5), (-2, -1)):
            return g
    raise AssertionError("example line not enumerated")


def test_example_weight():
    g = example_line()
    assert g.weight == EXAMPLE_WEIGHT
    assert negative_closed_form(g) == g.weight
    assert [m for _, m in g.bends] == [1, 1, 2]


def test_example_geometry():
    result = realize_geometrically(example_line(), (Fraction(1, 4), Fraction(3, 8)))
    assert result.ok
    assert result.points[1:] == ((0, Fraction(1, 4)), (Fraction(-1, 8), Fraction(-1, 16)),
                                 (Fraction(-1, 6), Fraction(-1, 9)))
    assert result.angular_momentum < 0


def test_wall_indexing():
    assert negative_wall(2, 0).kind is WallKind.AXIS2
    assert negative_wall(2, 1).kind is WallKind.AXIS1
    assert negative_wall(3, 3).direction == (8, 3)
    assert positive_wall(3, 3).direction == (3, 8)
    assert slope_one_wall().step == (2, 2)


def test_third_quadrant_q_is_refused():
    g = example_line()
    assert realize_geometrically(g, (-1, -1)).kind is FailureKind.NOT_GENERIC
    assert realize_geometrically(g, (0, 1)).kind is FailureKind.NOT_GENERIC


def test_unbent_line_is_always_realized():
    g = BrokenLine(2, (-3, -2), ())
    assert g.weight == QLaurent.const(1)
    assert realize_somewhere(g, negative=True).ok


@given(st.fractions(-5, 5), st.fractions(-5, 5), st.integers(-9, 9), st.integers(-9, 9))
def test_angular_momentum_is_a_cross_product(x, y, a, b):
    assert angular_momentum((x, y), (a, b)) == y * a - x * b


@pytest.mark.parametrize("r,ell,h", [(2, 3, 2), (2, 5, 4), (3, 8, 3)])
def test_enumerated_lines_end_at_their_class(r, ell, h):
    for a in range(ell + 1):
        for b in range(h + 1):
            for g in enumerate_BL(r, ell, h, a, b):
                assert g.terminal == (-ell + r * b, -h + r * a)
                assert g.weight.bar() == g.weight


def test_positive_lines_exist():
    assert enumerate_BL(2, 4, 3, 1, 0, Side.POSITIVE)
