from hypothesis import given, strategies as st

from greedytheta.qalgebra import ONE, ZERO, QLaurent, qbinom, qint, subset_exponent
from itertools import combinations

from oracles import gaussian_binomial

polys = st.dictionaries(st.integers(-6, 6), st.integers(-3, 3), max_size=5).map(QLaurent)


def test_small_values():
    assert qbinom(2, 1) == QLaurent({-1: 1, 1: 1})
    assert qint(3) == QLaurent({-2: 1, 0: 1, 2: 1})
    assert qbinom(5, 0) == ONE and qbinom(3, 4) == ZERO


def test_binomial_matches_inversion_count():
    for l in range(8):
        for k in range(l + 1):
            assert qbinom(l, k) == gaussian_binomial(l, k)


def test_subset_exponents_sum_to_binomial():
    for h in range(7):
        for k in range(h + 1):
            total = QLaurent()
            for J in combinations(range(1, h + 1), k):
                total += QLaurent.monomial(subset_exponent(h, J))
            assert total == qbinom(h, k)


def test_serialization_roundtrip():
    f = QLaurent({-3: 2, 4: -1})
    assert f.to_json() == [[-3, 2], [4, -1]]
    assert QLaurent.from_json(f.to_json()) == f
    assert str(f) == "2q^-3-q^4"


@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == ZERO


@given(polys, polys)
def test_bar_is_multiplicative(f, g):
    assert (f * g).bar() == f.bar() * g.bar()
    assert f.bar().bar() == f


@given(st.integers(0, 12), st.integers(0, 12))
def test_binomial_is_bar_invariant_and_symmetric(l, k):
    b = qbinom(l, k)
    assert b.bar() == b
    if k <= l:
        assert b == qbinom(l, l - k)
        assert b.evaluate(1) == gaussian_binomial(l, k).evaluate(1) if l <= 8 else True


@given(polys, st.integers(1, 4))
def test_substitute_power(f, m):
    assert f.substitute_power(m).evaluate(1) == f.evaluate(1)
    assert f.substitute_power(m) * f.substitute_power(m) == (f * f).substitute_power(m)
