"""Maps between compatible pairs and the pair-to-broken-line maps built from them."""

from __future__ import annotations

from dataclasses import dataclass

from .dyckpath import maximal_dyck_path
from .pairs import (CompatiblePair, PreconditionViolated, cascade, lambda_map,
                    protruding_edges, shadow, shadow_set)
from .qalgebra import subset_exponent
from .scattering import BrokenLine, negative_wall, positive_wall, slope_one_wall


@dataclass(frozen=True)
class ThetaOrbit:
    stages: tuple  # the iterates, starting with the input pair
    sizes: tuple  # |S2| at each stage
    stabilized_value: int | None = None

    def to_json(self) -> dict:
        return {
            "stages": [p.to_json() for p in self.stages],
            "sizes": list(self.sizes),
            "stabilized_value": self.stabilized_value,
        }


def _check_slope(pair: CompatiblePair) -> None:
    ell, h, r = pair.path.ell, pair.path.h, pair.r
    if not (r - 1) * h <= ell <= r * h:
        raise PreconditionViolated(f"need (r-1)h <= ell <= rh, got ell={ell}, h={h}, r={r}")


def in_cascade_domain(pair: CompatiblePair, blocks=None) -> bool:
    """S1 inside cas(S2), where the weight of ttheta is preserved."""
    if not pair.is_positive():
        return False
    return pair.S1 <= cascade(pair.path, pair.S2, pair.r, blocks).edges


def in_shadow_domain(pair: CompatiblePair) -> bool:
    return pair.S1 <= shadow_set(pair.path, pair.S2, pair.r)


def _complement_to_eta(pair: CompatiblePair) -> frozenset:
    return frozenset(i for i in range(1, pair.path.h + 1) if i not in pair.S2)


def ttheta(pair: CompatiblePair, blocks=None) -> CompatiblePair:
    """Move (S1, S2) on P(ell, h) to P(h, rh - ell): unchosen verticals become
    horizontals, and the j-th protruding edge lands in S2 when it is overflowing."""
    _check_slope(pair)
    path, r = pair.path, pair.r
    target = maximal_dyck_path(path.h, r * path.h - path.ell)
    S1 = _complement_to_eta(pair)
    if not pair.S2:
        return CompatiblePair(target, S1, frozenset(), r)
    cas = cascade(path, pair.S2, r, blocks)
    S2 = frozenset(k for k, j in enumerate(protruding_edges(path, r), start=1)
                   if j in pair.S2 and cas.partner(j) in pair.S1)
    return CompatiblePair(target, S1, S2, r)


def theta_llz(pair: CompatiblePair) -> CompatiblePair:
    """Same target as ttheta, but reads overshadowing edges through shadows."""
    _check_slope(pair)
    path, r = pair.path, pair.r
    target = maximal_dyck_path(path.h, r * path.h - path.ell)
    S1 = _complement_to_eta(pair)
    paired = shadow(path, pair.S2, r).paired
    S2 = frozenset(k for k, j in enumerate(protruding_edges(path, r), start=1)
                   if j in pair.S2 and paired.get(j) is not None and paired[j] in pair.S1)
    return CompatiblePair(target, S1, S2, r)


def overflowing_count(pair: CompatiblePair, blocks=None) -> int:
    if not pair.S2:
        return 0
    cas = cascade(pair.path, pair.S2, pair.r, blocks)
    return sum(1 for j in protruding_edges(pair.path, pair.r)
               if j in pair.S2 and cas.partner(j) in pair.S1)


def ttheta_orbit(pair: CompatiblePair, blocks=None) -> ThetaOrbit:
    """Iterate ttheta until S2 is empty. On a monomial path the iterates can
    reach a path too steep for ttheta; that is only allowed once nothing
    overflows, and the orbit then ends with a recorded size 0."""
    stages = [pair]
    sizes = [len(pair.S2)]
    while sizes[-1]:
        cur = stages[-1]
        step_blocks = blocks if len(stages) == 1 else None
        ell, h, r = cur.path.ell, cur.path.h, cur.r
        if not (r - 1) * h <= ell <= r * h:
            if overflowing_count(cur, step_blocks):
                raise PreconditionViolated(f"ttheta undefined on P({ell}, {h}) with overflow")
            sizes.append(0)
            break
        stages.append(ttheta(cur, step_blocks))
        sizes.append(len(stages[-1].S2))
    return ThetaOrbit(tuple(stages), tuple(sizes))


def negative_multiplicities(orbit: ThetaOrbit) -> list[int]:
    """Bend multiplicity at wall index k of the negative side, k = 0, 1, ..."""
    b = list(orbit.sizes) + [0, 0]
    r = orbit.stages[0].r
    mult = [len(orbit.stages[0].S1) - b[1]]
    for k in range(1, len(orbit.sizes) + 1):
        mult.append(b[k - 1] - r * b[k] + b[k + 1])
    while mult and mult[-1] == 0:
        mult.pop()
    return mult


def phi_negative(pair: CompatiblePair, blocks=None) -> BrokenLine:
    if not pair.is_positive():
        raise PreconditionViolated("phi_negative needs r|S2| <= ell")
    orbit = ttheta_orbit(pair, blocks)
    mult = negative_multiplicities(orbit)
    if any(m < 0 for m in mult):
        raise ArithmeticError(f"negative multiplicity {mult} for {pair}")
    r = pair.r
    bends = tuple((negative_wall(r, k), m) for k, m in reversed(list(enumerate(mult))) if m)
    return BrokenLine(r, (-pair.path.ell, -pair.path.h), bends)


def _check_kron(pair: CompatiblePair) -> None:
    ell, h = pair.path.ell, pair.path.h
    if pair.r != 2 or ell != h - 1:
        raise PreconditionViolated("the Kronecker map acts on P(h-1, h) with r = 2")
    if 2 * len(pair.S2) > h - 1:
        raise PreconditionViolated("need 2|S2| <= h - 1")


def ttheta_kron(pair: CompatiblePair) -> CompatiblePair:
    """P(h-1, h) to P(h, h+1); nu_h and nu_{h+1} of the target record whether
    the level-1 and level-2 partners of nu_h are chosen."""
    _check_kron(pair)
    path, h = pair.path, pair.path.h
    target = maximal_dyck_path(h, h + 1)
    S1 = _complement_to_eta(pair)
    if not pair.S2:
        return CompatiblePair(target, S1, frozenset(), 2)
    cas = cascade(path, pair.S2, 2)
    prot = protruding_edges(path, 2)
    S2 = {k for k, j in enumerate(prot, start=1)
          if k < h and j in pair.S2 and cas.partner(j) in pair.S1}
    if h in pair.S2:
        if cas.partner(h, 1) in pair.S1:
            S2.add(h)
        if cas.partner(h, 2) in pair.S1:
            S2.add(h + 1)
    return CompatiblePair(target, S1, frozenset(S2), 2)


def kron_orbit(pair: CompatiblePair) -> ThetaOrbit:
    """Iterate ttheta_kron until |S2| repeats; the repeated size is a_infinity."""
    stages = [pair]
    while True:
        nxt = ttheta_kron(stages[-1])
        stages.append(nxt)
        if len(nxt.S2) == len(stages[-2].S2):
            break
        if len(stages) > pair.path.h + 2:
            raise ArithmeticError("Kronecker orbit did not stabilize")
    sizes = tuple(len(p.S2) for p in stages)
    return ThetaOrbit(tuple(stages), sizes, sizes[-1])


def positive_multiplicities(orbit: ThetaOrbit) -> tuple[int, list[int]]:
    """(slope-one multiplicity, multiplicity at positive-side wall k)."""
    a_inf = orbit.stabilized_value
    a = list(orbit.sizes) + [a_inf, a_inf]
    mult = [len(orbit.stages[0].S1) - a[1]]
    for k in range(1, len(orbit.sizes) + 1):
        mult.append(a[k - 1] - 2 * a[k] + a[k + 1])
    while mult and mult[-1] == 0:
        mult.pop()
    return a_inf, mult


def phi_positive_kron(pair: CompatiblePair) -> BrokenLine:
    """Pairs on P(h-1, h) to positive lines with initial exponent (-h, -(h-1))."""
    a_inf, mult = positive_multiplicities(kron_orbit(pair))
    if any(m < 0 for m in mult):
        raise ArithmeticError(f"negative multiplicity {mult} for {pair}")
    bends = []
    if a_inf:
        bends.append((slope_one_wall(), a_inf))
    bends += [(positive_wall(2, k), m) for k, m in reversed(list(enumerate(mult))) if m]
    h = pair.path.h
    return BrokenLine(2, (-h, -(h - 1)), tuple(bends))


def _check_mm(pair: CompatiblePair) -> None:
    if pair.r != 2 or pair.path.ell != pair.path.h:
        raise PreconditionViolated("needs a pair on P(m, m) with r = 2")


def _free_choice(pair: CompatiblePair) -> tuple[int, list[int]]:
    """(|U|, J) with U the horizontals outside sh(S2) and J the positions
    within U of the edges not in S1."""
    U = [i for i in range(1, pair.path.ell + 1)
         if i not in shadow_set(pair.path, pair.S2, pair.r)]
    J = [k for k, i in enumerate(U, start=1) if i not in pair.S1]
    return len(U), J


def mm_orbit(pair: CompatiblePair) -> ThetaOrbit:
    _check_mm(pair)
    full = frozenset(range(1, pair.path.ell + 1))
    stages = [pair]
    while not (stages[-1].S1 == full and not stages[-1].S2):
        if len(stages) > pair.path.ell + 2:
            raise ArithmeticError(f"theta iteration from {pair} does not reach (P1, {{}})")
        stages.append(theta_llz(stages[-1]))
    return ThetaOrbit(tuple(stages), tuple(len(p.S2) for p in stages))


def kron_recursive_weight(pair: CompatiblePair) -> int:
    total = 0
    for stage in mm_orbit(pair).stages:
        size, J = _free_choice(stage)
        total += 4 * subset_exponent(size, J)
    return total


def mm_multiplicities(pair: CompatiblePair) -> list[int]:
    """Bend multiplicity at (m, m)-family wall k, one per theta stage."""
    mult = [len(_free_choice(stage)[1]) for stage in mm_orbit(pair).stages]
    while mult and mult[-1] == 0:
        mult.pop()
    return mult


def phi_mm(pair: CompatiblePair) -> BrokenLine:
    _check_mm(pair)
    if 2 * len(pair.S2) > pair.path.ell:
        raise PreconditionViolated("phi_mm needs 2|S2| <= m")
    mult = mm_multiplicities(pair)
    bends = tuple((negative_wall(2, k), m) for k, m in reversed(list(enumerate(mult))) if m)
    m = pair.path.ell
    return BrokenLine(2, (-m, -m), bends)
