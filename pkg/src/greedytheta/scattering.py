"""Walls of the rank-two scattering diagram and broken lines as bend sequences."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import gcd

from .dyckpath import c_seq
from .qalgebra import ONE, ZERO, QLaurent, qbinom, qint


class WallKind(str, Enum):
    AXIS1 = "Axis1"  # the x-axis, function 1 + x1^r
    AXIS2 = "Axis2"  # the y-axis, function 1 + x2^r
    BELOW = "ClusterBelow"  # ray R<=0 (c_{k+1}, c_k)
    ABOVE = "ClusterAbove"  # ray R<=0 (c_k, c_{k+1})
    SLOPE_ONE = "SlopeOne"  # r = 2 only


class Side(str, Enum):
    NEGATIVE = "Negative"
    POSITIVE = "Positive"
    MM_NEGATIVE = "MMNegative"


class AngularMomentumSign(str, Enum):
    ALWAYS_POSITIVE = "AlwaysPositive"
    ALWAYS_NEGATIVE = "AlwaysNegative"
    DEPENDS_ON_Q = "DependsOnQ"


class ScatteringError(ValueError):
    pass


class NoPositiveNormal(ScatteringError):
    pass


class ZeroWeight(ScatteringError):
    pass


class Unsupported(ScatteringError):
    pass


@dataclass(frozen=True)
class Wall:
    kind: WallKind
    r: int
    index: int | None = None  # k for the cluster rays

    @property
    def direction(self) -> tuple[int, int]:
        """Primitive vector spanning the wall (the ray is its nonpositive multiples)."""
        if self.kind is WallKind.AXIS1:
            return (1, 0)
        if self.kind is WallKind.AXIS2:
            return (0, 1)
        if self.kind is WallKind.SLOPE_ONE:
            return (1, 1)
        k, r = self.index, self.r
        if self.kind is WallKind.BELOW:
            return (c_seq(r, k + 1), c_seq(r, k))
        return (c_seq(r, k), c_seq(r, k + 1))

    @property
    def is_full_line(self) -> bool:
        return self.kind in (WallKind.AXIS1, WallKind.AXIS2)

    @property
    def step(self) -> tuple[int, int]:
        """Exponent added per unit of bend multiplicity."""
        if self.kind is WallKind.SLOPE_ONE:
            return (2, 2)
        d = self.direction
        return (self.r * d[0], self.r * d[1])

    @property
    def crossing_normal(self) -> tuple[int, int]:
        """Primitive normal pairing positively with lines crossing this wall
        the way broken lines of the matching side do."""
        d1, d2 = self.direction
        if self.kind in (WallKind.BELOW, WallKind.AXIS1):
            return (d2, -d1) if self.kind is WallKind.BELOW else (0, -1)
        if self.kind is WallKind.AXIS2:
            return (-1, 0)
        return (-d2, d1)

    @property
    def label(self) -> str:
        if self.kind is WallKind.AXIS1:
            return "x-axis"
        if self.kind is WallKind.AXIS2:
            return "y-axis"
        if self.kind is WallKind.SLOPE_ONE:
            return "slope-1"
        k = self.index
        if self.kind is WallKind.BELOW:
            return f"c{k}/c{k + 1}"
        return f"c{k + 1}/c{k}"

    def __str__(self) -> str:
        return self.label


def negative_wall(r: int, k: int) -> Wall:
    """Wall of slope c_k / c_{k+1}: k = 0 is the y-axis, k = 1 the x-axis."""
    if k < 0:
        raise ValueError("wall index must be nonnegative")
    if k == 0:
        return Wall(WallKind.AXIS2, r)
    if k == 1:
        return Wall(WallKind.AXIS1, r)
    return Wall(WallKind.BELOW, r, k)


def positive_wall(r: int, k: int) -> Wall:
    """Wall of slope c_{k+1} / c_k: k = 0 is the x-axis, k = 1 the y-axis."""
    if k < 0:
        raise ValueError("wall index must be nonnegative")
    if k == 0:
        return Wall(WallKind.AXIS1, r)
    if k == 1:
        return Wall(WallKind.AXIS2, r)
    return Wall(WallKind.ABOVE, r, k)


def slope_one_wall() -> Wall:
    return Wall(WallKind.SLOPE_ONE, 2)


def _dot(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1]


def slope_one_coefficient(power: int, m: int) -> QLaurent:
    """Coefficient of x^m in (sum_k [k+1]_{q^4} x^k)^power."""
    series = [qint(k + 1).substitute_power(4) for k in range(m + 1)]
    acc = [ONE] + [ZERO] * m
    for _ in range(power):
        nxt = [ZERO] * (m + 1)
        for i, c in enumerate(acc):
            if not c:
                continue
            for j in range(m + 1 - i):
                nxt[i + j] = nxt[i + j] + c * series[j]
        acc = nxt
    return acc[m]


def _binomial_weight(wall: Wall, dot: int, m: int) -> QLaurent:
    if wall.kind is WallKind.SLOPE_ONE:
        return slope_one_coefficient(dot, m)
    return qbinom(dot, m).substitute_power(2 * wall.r)


def bend_weight_first_principles(v, wall: Wall, m: int, r: int | None = None) -> QLaurent:
    """Coefficient picked up when a segment with exponent v bends m times at wall."""
    if m == 0:
        return ONE
    d = wall.direction
    g = gcd(d[0], d[1])
    dot = abs(_dot(v, (d[1] // g, -d[0] // g)))
    if dot == 0:
        raise NoPositiveNormal(f"exponent {tuple(v)} is parallel to {wall.label}")
    return _binomial_weight(wall, dot, m)


@dataclass(frozen=True)
class BrokenLine:
    r: int
    initial: tuple[int, int]
    bends: tuple  # ((Wall, multiplicity), ...) in the order the line meets them

    @cached_property
    def exponents(self) -> tuple[tuple[int, int], ...]:
        out = [tuple(self.initial)]
        for wall, m in self.bends:
            s = wall.step
            x, y = out[-1]
            out.append((x + m * s[0], y + m * s[1]))
        return tuple(out)

    @property
    def terminal(self) -> tuple[int, int]:
        return self.exponents[-1]

    @cached_property
    def weight(self) -> QLaurent:
        return line_weight(self)

    def bend_signature(self) -> tuple:
        return tuple((w.label, m) for w, m in self.bends)

    def to_json(self) -> dict:
        return {
            "initial": list(self.initial),
            "bends": [{"wall": w.label, "m": m} for w, m in self.bends],
            "terminal": list(self.terminal),
            "weight": str(self.weight),
        }

    def __str__(self) -> str:
        inner = ", ".join(f"({w.label}, {m})" for w, m in self.bends)
        return f"line{tuple(self.initial)}[{inner}]"


def line_weight(line: BrokenLine) -> QLaurent:
    total = ONE
    for (wall, m), v in zip(line.bends, line.exponents):
        w = bend_weight_first_principles(v, wall, m, line.r)
        if not w:
            raise ZeroWeight(f"bend ({wall.label}, {m}) has weight zero at exponent {v}")
        total = total * w
    return total


def _oriented_weight(v, wall: Wall, m: int) -> QLaurent:
    dot = _dot(v, wall.crossing_normal)
    if dot <= 0:
        return ZERO
    return _binomial_weight(wall, dot, m)


def _compositions(target: int, parts: list[int]):
    """Nonnegative (m_k) over the given part sizes (largest first) summing to target."""
    if not parts:
        if target == 0:
            yield ()
        return
    size, rest = parts[0], parts[1:]
    for m in range(target // size + 1):
        for tail in _compositions(target - m * size, rest):
            yield (m,) + tail


def _search(r: int, initial, wall_of, first_coord, second_coord, total_first,
            total_second, leading=()):
    """Bend sequences along walls wall_of(k), k decreasing to 0, where the
    k >= 1 multiplicities sum to total_first against first_coord(k) and the
    k = 0 multiplicity absorbs what second_coord leaves of total_second."""
    ks = []
    k = 1
    while first_coord(k) <= total_first:
        if first_coord(k) > 0:
            ks.append(k)
        k += 1
        if k > 200:
            raise ArithmeticError("wall index search did not terminate")
    ks.reverse()
    out = []
    for mults in _compositions(total_first, [first_coord(k) for k in ks]):
        used = sum(m * second_coord(k) for m, k in zip(mults, ks))
        m0 = total_second - used
        if m0 < 0:
            continue
        bends = list(leading)
        bends += [(wall_of(k), m) for m, k in zip(mults, ks) if m]
        if m0:
            bends.append((wall_of(0), m0))
        line = BrokenLine(r, tuple(initial), tuple(bends))
        weight = ONE
        for (wall, m), v in zip(line.bends, line.exponents):
            weight = weight * _oriented_weight(v, wall, m)
            if not weight:
                break
        if weight:
            out.append(line)
    return out


def enumerate_BL(r: int, ell: int, h: int, a: int, b: int, side: Side = Side.NEGATIVE):
    """Broken lines from exponent (-ell, -h) to (-ell + r b, -h + r a)."""
    side = Side(side)
    if a < 0 or b < 0:
        return []
    initial = (-ell, -h)
    if side in (Side.NEGATIVE, Side.MM_NEGATIVE):
        if side is Side.MM_NEGATIVE and (r != 2 or ell != h):
            raise ValueError("the (m, m) family needs r = 2 and ell = h")
        return _search(r, initial, lambda k: negative_wall(r, k),
                       lambda k: c_seq(r, k + 1), lambda k: c_seq(r, k), b, a)
    if r != 2:
        raise Unsupported("positive angular momentum lines are only available for r = 2")
    out = []
    for m_inf in range(a + 1):
        lead = ((slope_one_wall(), m_inf),) if m_inf else ()
        out += _search(r, initial, lambda k: positive_wall(r, k),
                       lambda k: c_seq(r, k + 1), lambda k: c_seq(r, k),
                       a - m_inf, b - m_inf, lead) if b >= m_inf else []
    return out


def lines_weight_sum(lines) -> QLaurent:
    total = ZERO
    for line in lines:
        total = total + line.weight
    return total


# closed-form products, used as cross-checks of line_weight

def _find_index(r: int, ell: int, h: int) -> int | None:
    for n in range(1, 60):
        if c_seq(r, n + 1) == ell and c_seq(r, n) == h:
            return n
    return None


def negative_closed_form(line: BrokenLine) -> QLaurent:
    """Product formula for a negative line starting at (-c_{n+1}, -c_n)."""
    r = line.r
    n = _find_index(r, -line.initial[0], -line.initial[1])
    if n is None:
        raise ValueError("initial exponent is not of the form (-c_{n+1}, -c_n)")
    out = ONE
    done: list[tuple[int, int]] = []
    for wall, m in line.bends:
        k = _negative_index(wall)
        top = c_seq(r, n - k + 1) - r * sum(mj * c_seq(r, kj - k + 1) for kj, mj in done)
        out = out * qbinom(top, m).substitute_power(2 * r)
        done.append((k, m))
    return out


def _negative_index(wall: Wall) -> int:
    if wall.kind is WallKind.AXIS2:
        return 0
    if wall.kind is WallKind.AXIS1:
        return 1
    if wall.kind is WallKind.BELOW:
        return wall.index
    raise ValueError(f"{wall.label} is not a negative-side wall")


def _positive_index(wall: Wall) -> int:
    if wall.kind is WallKind.AXIS1:
        return 0
    if wall.kind is WallKind.AXIS2:
        return 1
    if wall.kind is WallKind.ABOVE:
        return wall.index
    raise ValueError(f"{wall.label} is not a positive-side wall")


def kron_positive_closed_form(line: BrokenLine) -> QLaurent:
    """The printed product for r = 2 positive lines from (-c_{n+1}, -c_n) = (-n, -(n-1))."""
    n = -line.initial[0]
    bends = list(line.bends)
    m_inf = 0
    if bends and bends[0][0].kind is WallKind.SLOPE_ONE:
        m_inf = bends.pop(0)[1]
    out = qint(m_inf + 1).substitute_power(4)
    done: list[tuple[int, int]] = []
    for wall, m in bends:
        k = _positive_index(wall)
        top = (n + k - 2 * m_inf) - 2 * sum(mj * (kj - k) for kj, mj in done)
        out = out * qbinom(top, m).substitute_power(4)
        done.append((k, m))
    return out


def mm_closed_form(line: BrokenLine) -> QLaurent:
    """Product formula for r = 2 lines from (-m, -m), using the nonnegative tops
    h - 2 sum m_j (l_j - l_i); wall d_{l/(l+1)} is negative-side index l + 1."""
    h = -line.initial[0]
    out = ONE
    done: list[tuple[int, int]] = []
    for wall, m in line.bends:
        l = _negative_index(wall) - 1
        top = h - 2 * sum(mj * (lj - l) for lj, mj in done)
        out = out * qbinom(top, m).substitute_power(4)
        done.append((l, m))
    return out


# angular momentum and geometry

def angular_momentum(Q, exponent) -> Fraction:
    q1, q2 = (Fraction(x) for x in Q)
    m1, m2 = exponent
    return q2 * m1 - q1 * m2


def sign_of_am_from_monomial(r: int, n: int, a: int, b: int) -> AngularMomentumSign:
    if r * b >= c_seq(r, n - 1):
        return AngularMomentumSign.ALWAYS_POSITIVE
    if r * a >= c_seq(r, n - 2):
        return AngularMomentumSign.ALWAYS_NEGATIVE
    return AngularMomentumSign.DEPENDS_ON_Q


class FailureKind(str, Enum):
    PARALLEL = "Parallel"
    ORDER_VIOLATION = "OrderViolation"
    OFF_RAY = "OffRay"
    THROUGH_ORIGIN = "ThroughOrigin"
    MOMENTUM_CHANGED = "MomentumChanged"
    NOT_GENERIC = "NotGeneric"


@dataclass(frozen=True)
class Realization:
    points: tuple  # Q, then the bend points from last to first
    angular_momentum: Fraction

    @property
    def ok(self) -> bool:
        return True


@dataclass(frozen=True)
class Failure:
    kind: FailureKind
    bend: int | None  # position in the bend list
    detail: str = ""

    @property
    def ok(self) -> bool:
        return False


def realize_geometrically(line: BrokenLine, Q=(Fraction(1, 4), Fraction(3, 8))):
    """Trace the line backwards from Q, checking each bend lands on its wall.

    Q may sit in any open quadrant except the third, where the walls are dense."""
    Q = tuple(Fraction(x) for x in Q)
    if Q[0] == 0 or Q[1] == 0 or (Q[0] < 0 and Q[1] < 0):
        return Failure(FailureKind.NOT_GENERIC, None, f"Q={Q}")
    exps = line.exponents
    am = angular_momentum(Q, exps[-1])
    point = Q
    points = [Q]
    for pos in range(len(line.bends) - 1, -1, -1):
        wall, _ = line.bends[pos]
        v = exps[pos + 1]
        d = wall.direction
        # solve point + s v = t d
        det = d[0] * v[1] - v[0] * d[1]
        if det == 0:
            return Failure(FailureKind.PARALLEL, pos, wall.label)
        px, py = point
        s = (px * d[1] - d[0] * py) / det
        t = (px * v[1] - v[0] * py) / det
        if s <= 0:
            return Failure(FailureKind.ORDER_VIOLATION, pos,
                           f"{wall.label} lies ahead of the segment, not behind it")
        if t == 0:
            return Failure(FailureKind.THROUGH_ORIGIN, pos, wall.label)
        if not wall.is_full_line and t > 0:
            return Failure(FailureKind.OFF_RAY, pos, f"{wall.label} hit on the wrong half")
        point = (px + s * v[0], py + s * v[1])
        points.append(point)
        if angular_momentum(point, v) != am or angular_momentum(point, exps[pos]) != am:
            return Failure(FailureKind.MOMENTUM_CHANGED, pos, wall.label)
    return Realization(tuple(points), am)


SAMPLE_POINTS = tuple((Fraction(a), Fraction(b)) for a, b in [
    (Fraction(1, 4), Fraction(3, 8)), (Fraction(3, 8), Fraction(1, 4)),
    (1, 10), (10, 1), (Fraction(7, 5), Fraction(11, 13)), (Fraction(11, 13), Fraction(7, 5)),
    (1, 100), (100, 1), (Fraction(1, 1000), Fraction(997, 1000)),
    (Fraction(997, 1000), Fraction(1, 1000)),
    # lines whose terminal exponent cannot reach the first quadrant
    (Fraction(1, 4), Fraction(-3, 8)), (Fraction(-1, 4), Fraction(3, 8)),
    (1, -10), (-10, 1), (10, -1), (-1, 10), (3, -1), (-1, 3),
])


def realize_somewhere(line: BrokenLine, negative: bool, points=SAMPLE_POINTS):
    """First successful realization at a sample point whose angular momentum
    has the requested sign; the last failure if none works."""
    last = Failure(FailureKind.MOMENTUM_CHANGED, None, "no sample point in the regime")
    for Q in points:
        am = angular_momentum(Q, line.terminal)
        if am == 0 or (am < 0) != negative:
            continue
        result = realize_geometrically(line, Q)
        if result.ok:
            return result
        last = result
    return last
