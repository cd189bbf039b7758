"""Recursions for weighted counts of broken lines and compatible pairs.

Each function returns (lhs, rhs). The printed form of each identity re-indexes
walls k -> k - 1 and so sends the x-axis onto the y-axis; but the shifted
x-axis bend points the opposite way along the y-axis from a genuine y-axis
bend. The corrected form re-grades each target line by its y-axis multiplicity
s, which moves the first coordinate of the target class by 2s.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from .dyckpath import c_seq, maximal_dyck_path
from .maps import phi_negative
from .pairs import enumerate_pairs, expansion_shift
from .qalgebra import ONE, ZERO, QLaurent, qbinom
from .scattering import Side, WallKind, enumerate_BL


def _axis_multiplicity(line, kind: WallKind) -> int:
    return sum(m for wall, m in line.bends if wall.kind is kind)


@lru_cache(maxsize=None)
def _line_table(r: int, ell: int, h: int, a: int, b: int, side: str):
    """{y-axis multiplicity: weight sum} and {lines avoiding both axes: weight sum}."""
    by_y: dict[int, QLaurent] = defaultdict(lambda: ZERO)
    off_axes = ZERO
    for line in enumerate_BL(r, ell, h, a, b, Side(side)):
        by_y[_axis_multiplicity(line, WallKind.AXIS2)] += line.weight
        if not any(w.kind in (WallKind.AXIS1, WallKind.AXIS2) for w, _ in line.bends):
            off_axes += line.weight
    return dict(by_y), off_axes


def bl_count(r, ell, h, a, b, side=Side.NEGATIVE, y_mult=None) -> QLaurent:
    if a < 0 or b < 0:
        return ZERO
    by_y, _ = _line_table(r, ell, h, a, b, Side(side).value)
    if y_mult is None:
        return sum(by_y.values(), ZERO)
    return by_y.get(y_mult, ZERO)


def _off_axes_count(r, ell, h, a, b, side) -> QLaurent:
    if a < 0 or b < 0:
        return ZERO
    return _line_table(r, ell, h, a, b, Side(side).value)[1]


def _binom(top: int, t: int, power: int) -> QLaurent:
    if t == 0:
        return ONE
    return qbinom(top, t).substitute_power(power)


def negative_recursion(r: int, n: int, a: int, b: int, corrected: bool = False):
    """|BL_-(c_{n+1}, c_n, a, b)| against the sum over the y-axis multiplicity t
    of lines from (-c_n, -c_{n-1}); needs rb <= c_n."""
    hi, mid, lo = c_seq(r, n + 1), c_seq(r, n), c_seq(r, n - 1)
    lhs = bl_count(r, hi, mid, a, b)
    rhs = ZERO
    for t in range(a + 1):
        coeff = _binom(hi - r * b, t, 2 * r)
        if not corrected:
            rhs += coeff * bl_count(r, mid, lo, r * (a - t) - b, a - t)
            continue
        for s in range(mid + 1):
            rhs += coeff * bl_count(r, mid, lo, r * (a - t) - b + 2 * s, a - t, y_mult=s)
    return lhs, rhs


def kron_positive_recursion(h: int, a: int, b: int, corrected: bool = False):
    """|BL_+(h+1, h, a, b)| for r = 2; needs 2a <= h + 1.

    Here t is the x-axis multiplicity. Removing that bend and applying
    (x, y) -> (y, 2y - x) gives a line from (-h, -(h-1)) that bends on no axis,
    with class (2a - b + t, a)."""
    lhs = bl_count(2, h + 1, h, a, b, Side.POSITIVE)
    rhs = ZERO
    for t in range(b + 1):
        coeff = _binom(h - 2 * a, t, 4)
        if corrected:
            rhs += coeff * _off_axes_count(2, h, h - 1, 2 * a - b + t, a, Side.POSITIVE)
        else:
            rhs += coeff * bl_count(2, h, h - 1, b - t, 2 * (b - t) - a, Side.POSITIVE)
    return lhs, rhs


def mm_recursion(h: int, a: int, b: int, corrected: bool = False):
    """|BL_-(h, h, a, b)| for r = 2; needs 2b <= h."""
    lhs = bl_count(2, h, h, a, b, Side.MM_NEGATIVE)
    rhs = ZERO
    for t in range(a + 1):
        coeff = _binom(h - 2 * b, t, 4)
        if not corrected:
            rhs += coeff * bl_count(2, h, h, 2 * (a - t) - b, a - t, Side.MM_NEGATIVE)
            continue
        for s in range(h + 1):
            rhs += coeff * bl_count(2, h, h, 2 * (a - t) - b + 2 * s, a - t,
                                    Side.MM_NEGATIVE, y_mult=s)
    return lhs, rhs


@lru_cache(maxsize=None)
def _pair_table(r: int, ell: int, h: int):
    """Weight sums q^(2(shift + w)) by (|S1|, |S2|), and for positive pairs
    also by the y-axis multiplicity of their image line."""
    path = maximal_dyck_path(ell, h)
    shift = expansion_shift(path)
    total: dict = defaultdict(lambda: ZERO)
    by_y: dict = defaultdict(lambda: ZERO)
    for pair in enumerate_pairs(path, r):
        w = QLaurent.monomial(2 * (shift + pair.weight))
        total[(pair.a, pair.b)] += w
        if pair.is_positive():
            s = _axis_multiplicity(phi_negative(pair), WallKind.AXIS2)
            by_y[(pair.a, pair.b, s)] += w
    return dict(total), dict(by_y)


def cp_recursion(r: int, n: int, a: int, b: int, corrected: bool = False):
    """|CP(c_{n+1}, c_n, a, b)| with pair weights q^(2(shift + w)); needs rb <= c_{n+1}."""
    hi, mid, lo = c_seq(r, n + 1), c_seq(r, n), c_seq(r, n - 1)
    lhs = _pair_table(r, hi, mid)[0].get((a, b), ZERO)
    total, by_y = _pair_table(r, mid, lo)
    rhs = ZERO
    for t in range(a + 1):
        coeff = _binom(hi - r * b, t, 2 * r)
        if not corrected:
            rhs += coeff * total.get((r * (a - t) - b, a - t), ZERO)
            continue
        for s in range(mid + 1):
            rhs += coeff * by_y.get((r * (a - t) - b + 2 * s, a - t, s), ZERO)
    return lhs, rhs
