"""Compatible pairs on maximal Dyck paths: compatibility, weights, shadows,
cascades and the lambda involution."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import gcd
from itertools import combinations
from typing import Iterable

from .dyckpath import DyckPath, c_seq, cluster_path, maximal_dyck_path, monomial_path


class Wrap(str, Enum):
    CYCLIC = "Cyclic"
    LINEAR = "Linear"


class PreconditionViolated(ValueError):
    pass


# Sign of the (h, v) base value and whether the shift uses the paper's
# 1 - c_{n-1} - c_{n-2}; both are fixed by the calibration in cli/calibrate.
HV_SIGN = 1


def base_weight_table(r: int, hv_sign: int = HV_SIGN) -> dict[tuple[str, str], int]:
    """w(xy) for each ordered pair of letters x before y."""
    base = {
        ("h", "v"): hv_sign,
        ("H", "v"): 1,
        ("h", "V"): 1,
        ("H", "h"): r,
        ("v", "V"): r,
        ("V", "H"): r * r - 1,
    }
    table = {(x, y): 0 for x in "hHvV" for y in "hHvV"}
    for (x, y), w in base.items():
        table[(x, y)] = w
        table[(y, x)] = -w
    return table


def word_weight(word: str, r: int, hv_sign: int = HV_SIGN) -> int:
    """Sum of w(sigma_i sigma_j) over i < j."""
    table = base_weight_table(r, hv_sign)
    seen = {x: 0 for x in "hHvV"}
    total = 0
    for y in word:
        for x, k in seen.items():
            if k:
                total += k * table[(x, y)]
        seen[y] += 1
    return total


@dataclass(frozen=True)
class CompatiblePair:
    path: DyckPath
    S1: frozenset
    S2: frozenset
    r: int

    def __post_init__(self):
        object.__setattr__(self, "S1", frozenset(self.S1))
        object.__setattr__(self, "S2", frozenset(self.S2))
        if any(i < 1 or i > self.path.ell for i in self.S1):
            raise IndexError("S1 index out of range")
        if any(j < 1 or j > self.path.h for j in self.S2):
            raise IndexError("S2 index out of range")

    @property
    def a(self) -> int:
        return len(self.S1)

    @property
    def b(self) -> int:
        return len(self.S2)

    @cached_property
    def word(self) -> str:
        return encode_word(self.path, self.S1, self.S2)

    @cached_property
    def weight(self) -> int:
        return word_weight(self.word, self.r)

    def is_positive(self) -> bool:
        return self.r * len(self.S2) <= self.path.ell

    def to_json(self) -> dict:
        return {
            "ell": self.path.ell,
            "h": self.path.h,
            "r": self.r,
            "S1": sorted(self.S1),
            "S2": sorted(self.S2),
            "word": self.word,
            "weight": self.weight,
        }

    def __str__(self) -> str:
        return f"({sorted(self.S1)}, {sorted(self.S2)}) on P({self.path.ell},{self.path.h})"


def encode_word(path: DyckPath, S1: Iterable[int], S2: Iterable[int]) -> str:
    S1, S2 = set(S1), set(S2)
    out = []
    for e in path.edges:
        if e.horizontal:
            out.append("H" if e.index in S1 else "h")
        else:
            out.append("V" if e.index in S2 else "v")
    return "".join(out)


def rupel_weight(pair: CompatiblePair, hv_sign: int = HV_SIGN) -> int:
    return word_weight(pair.word, pair.r, hv_sign)


def is_positive(pair: CompatiblePair) -> bool:
    return pair.is_positive()


class _Prefix:
    """Prefix counts along two laps of a path, for O(1) segment queries."""

    def __init__(self, path: DyckPath, S1, S2):
        n = len(path)
        self.n = n
        horiz = [0]
        s1 = [0]
        s2 = [0]
        for k in range(2 * n):
            e = path.edges[k % n]
            horiz.append(horiz[-1] + e.horizontal)
            s1.append(s1[-1] + (e.horizontal and e.index in S1))
            s2.append(s2[-1] + ((not e.horizontal) and e.index in S2))
        self.horiz, self.s1, self.s2 = horiz, s1, s2

    def counts(self, start: int, stop: int):
        """(#horizontal, #vertical, #S1, #S2) on edges start..stop-1."""
        hz = self.horiz[stop] - self.horiz[start]
        return (hz, (stop - start) - hz,
                self.s1[stop] - self.s1[start], self.s2[stop] - self.s2[start])


def _pair_ok(path: DyckPath, pre: _Prefix, r: int, i: int, j: int, wrap: Wrap) -> bool:
    e, f = path.eta(i), path.nu(j)
    start, stop = path.cyclic_subpath(e, f)
    if wrap is Wrap.LINEAR and stop > pre.n:
        return True
    for t in range(start + 1, stop):
        hz, _, _, s2 = pre.counts(t, stop)
        if hz == r * s2:
            return True
        _, vt, s1, _ = pre.counts(start, t)
        if vt == r * s1:
            return True
    return False


def is_compatible(path: DyckPath, S1, S2, r: int, wrap: Wrap = Wrap.CYCLIC) -> bool:
    wrap = Wrap(wrap)
    S1, S2 = set(S1), set(S2)
    if any(i < 1 or i > path.ell for i in S1) or any(j < 1 or j > path.h for j in S2):
        raise IndexError("edge index out of range")
    if not S1 or not S2:
        return True
    pre = _Prefix(path, S1, S2)
    return all(_pair_ok(path, pre, r, i, j, wrap) for i in S1 for j in S2)


def _subsets(items, sizes=None):
    items = sorted(items)
    ks = range(len(items) + 1) if sizes is None else sizes
    for k in ks:
        if 0 <= k <= len(items):
            yield from combinations(items, k)


def enumerate_pairs_bruteforce(path: DyckPath, r: int, a=None, b=None,
                               wrap: Wrap = Wrap.CYCLIC) -> list[CompatiblePair]:
    """Every (S1, S2) checked directly; exponential in the path length."""
    out = []
    for S2 in _subsets(range(1, path.h + 1), None if b is None else [b]):
        for S1 in _subsets(range(1, path.ell + 1), None if a is None else [a]):
            if is_compatible(path, S1, S2, r, wrap):
                out.append(CompatiblePair(path, frozenset(S1), frozenset(S2), r))
    out.sort(key=_pair_order)
    return out


def _pair_order(p: CompatiblePair):
    return (len(p.S2), sorted(p.S2), len(p.S1), sorted(p.S1))


def local_shadow(path: DyckPath, S2, r: int, j: int, wrap: Wrap = Wrap.CYCLIC):
    """(shadow edges, shadow-paired eta index or None) for nu_j in S2.

    Subpaths wrap around the path by default, which is what lambda and the
    (m, m) maps need. With Wrap.LINEAR they stop at the start of the path,
    and with no qualifying subpath the shadow is every horizontal edge."""
    S2 = set(S2)
    n = len(path)
    f = path.nu(j)
    stop = path.anchor(f)
    reach = n if wrap is Wrap.CYCLIC else stop
    hz = s2 = 0
    for back in range(1, reach + 1):
        e = path.edges[(stop - back) % n]
        if e.horizontal:
            hz += 1
        elif e.index in S2:
            s2 += 1
        if e.horizontal and hz == r * s2:
            start = stop - back
            shadow = {path.edges[k % n].index for k in range(start, stop)
                      if path.edges[k % n].horizontal}
            return frozenset(shadow), e.index
    return frozenset(range(1, path.ell + 1)), None


def shadow_set(path: DyckPath, S2, r: int, wrap: Wrap = Wrap.CYCLIC) -> frozenset:
    out = set()
    for j in S2:
        out |= local_shadow(path, S2, r, j, wrap)[0]
    return frozenset(out)


class _PairContext:
    """Per-(path, S2) data for enumerating the compatible choices of S1."""

    def __init__(self, path: DyckPath, S2, r: int):
        self.path, self.r = path, r
        self.S2 = frozenset(S2)
        n = len(path)
        self.n = n
        self.word = path.word
        # prefix counts over two laps: verticals and S2 verticals
        vert, s2 = [0], [0]
        for k in range(2 * n):
            e = path.edges[k % n]
            vert.append(vert[-1] + (not e.horizontal))
            s2.append(s2[-1] + ((not e.horizontal) and e.index in self.S2))
        self.vert, self.s2c = vert, s2
        horiz = [0]
        for k in range(2 * n):
            horiz.append(horiz[-1] + path.edges[k % n].horizontal)
        self.horiz = horiz
        # for each horizontal eta_i and nu_j in S2: None if the S2-only condition
        # already holds, else the (start, stop) range still needing an S1 witness
        self.needs: dict[int, list[tuple[int, int, bool]]] = {}
        for i in range(1, path.ell + 1):
            e = path.eta(i)
            todo = []
            for j in sorted(self.S2):
                f = path.nu(j)
                start, stop = path.cyclic_subpath(e, f)
                if any(horiz[stop] - horiz[t] == r * (s2[stop] - s2[t])
                       for t in range(start + 1, stop)):
                    continue
                todo.append((start, stop, stop > n))
            self.needs[i] = todo

    def s1_ok(self, i: int, chosen_positions: set[int], wrapped: bool) -> bool:
        """Whether eta_i satisfies its pending conditions (linear or wrapped ones)."""
        n, r = self.n, self.r
        for start, stop, wraps in self.needs[i]:
            if wraps != wrapped:
                continue
            vt = s1 = 0
            ok = False
            for t in range(start + 1, stop):
                k = t - 1
                if self.word[k % n] == "E":
                    if (k % n) in chosen_positions:
                        s1 += 1
                else:
                    vt += 1
                if vt == r * s1:
                    ok = True
                    break
            if not ok:
                return False
        return True


def iter_compatible_S1(path: DyckPath, S2, r: int, candidates=None, sizes=None):
    """Yield every S1 (as a frozenset of eta indices, drawn from candidates)
    making (S1, S2) compatible. Depth-first from east to west: the linear
    condition of a newly added edge only involves edges east of it, so every
    partial choice is final; wrapped conditions are checked at the leaves."""
    ctx = _PairContext(path, S2, r)
    cand = sorted(range(1, path.ell + 1) if candidates is None else candidates,
                  reverse=True)
    pos = {i: path.eta_positions[i] for i in cand}
    chosen: list[int] = []
    chosen_pos: set[int] = set()
    max_size = None if sizes is None else max(sizes)

    def leaf_ok():
        return all(ctx.s1_ok(i, chosen_pos, True) for i in chosen)

    def rec(k):
        if k == len(cand):
            if (sizes is None or len(chosen) in sizes) and leaf_ok():
                yield frozenset(chosen)
            return
        yield from rec(k + 1)
        if max_size is not None and len(chosen) >= max_size:
            return
        i = cand[k]
        chosen_pos.add(pos[i])
        chosen.append(i)
        if ctx.s1_ok(i, chosen_pos, False):
            yield from rec(k + 1)
        chosen.pop()
        chosen_pos.discard(pos[i])

    yield from rec(0)


def enumerate_pairs(path: DyckPath, r: int, a=None, b=None) -> list[CompatiblePair]:
    """All compatible pairs, optionally with |S1| = a and |S2| = b, ordered
    by (|S2|, S2, |S1|, S1)."""
    out = []
    for S2 in _subsets(range(1, path.h + 1), None if b is None else [b]):
        for S1 in iter_compatible_S1(path, S2, r, sizes=None if a is None else {a}):
            out.append(CompatiblePair(path, S1, frozenset(S2), r))
    out.sort(key=_pair_order)
    return out


def _edge_deltas(path: DyckPath, S2, r: int, hv_sign: int = HV_SIGN):
    """Weight of (empty, S2) and the additive change from putting each eta_i in S1.

    Horizontal-horizontal letter pairs contribute r(x_i - x_j), so the weight is
    affine in the indicator of S1."""
    base_word = encode_word(path, (), S2)
    w0 = word_weight(base_word, r, hv_sign)
    table = base_weight_table(r, hv_sign)
    deltas = {}
    letters = list(base_word)
    for i in range(1, path.ell + 1):
        p = path.eta_positions[i]
        d = 0
        for k, y in enumerate(letters):
            if k < p:
                d += table[(y, "H")] - table[(y, "h")]
            elif k > p:
                d += table[("H", y)] - table[("h", y)]
        deltas[i] = d
    return w0, deltas


def weight_polynomials(path: DyckPath, r: int, hv_sign: int = HV_SIGN):
    """{(|S1|, |S2|): sum of q^weight} over all compatible pairs on path.

    Edges outside sh(S2) can be added to S1 freely; only subsets of the
    shadow are searched."""
    from .qalgebra import ONE, ZERO, QLaurent

    out: dict[tuple[int, int], QLaurent] = {}
    for S2 in _subsets(range(1, path.h + 1)):
        w0, deltas = _edge_deltas(path, S2, r, hv_sign)
        shadow = shadow_set(path, S2, r)
        free = [i for i in range(1, path.ell + 1) if i not in shadow]
        free_poly = {0: ONE}
        for i in free:
            nxt = {}
            for k, c in free_poly.items():
                nxt[k] = nxt.get(k, ZERO) + c
                nxt[k + 1] = nxt.get(k + 1, ZERO) + c.shift(deltas[i])
            free_poly = nxt
        shadow_poly: dict[int, dict[int, int]] = {}
        for S1 in iter_compatible_S1(path, S2, r, candidates=shadow):
            e = sum(deltas[i] for i in S1)
            bucket = shadow_poly.setdefault(len(S1), {})
            bucket[e] = bucket.get(e, 0) + 1
        b = len(S2)
        for k2, coeffs in shadow_poly.items():
            sp = QLaurent(coeffs).shift(w0)
            for k1, fp in free_poly.items():
                key = (k1 + k2, b)
                out[key] = out.get(key, ZERO) + sp * fp
    return {k: v for k, v in sorted(out.items()) if v}


def pair_expansion(path: DyckPath, r: int, shift: int, cfg=None, swap: bool = False,
                   hv_sign: int = HV_SIGN):
    """sum over pairs of q^(shift + w) X^(-ell + r|S2|, -h + r|S1|), with
    bar-invariant (Weyl-normalized) monomials. swap=True exchanges X1 and X2."""
    from .qtorus import ConventionConfig, TorusElement

    cfg = cfg or ConventionConfig()
    sigma = cfg.commutation_sign
    terms = {}
    for (a, b), poly in weight_polynomials(path, r, hv_sign).items():
        A, B = -path.ell + r * b, -path.h + r * a
        if swap:
            A, B = B, A
        terms[(A, B)] = poly.shift(shift + sigma * A * B)
    return TorusElement(terms, cfg)


def expansion_shift(path: DyckPath) -> int:
    """q-shift making the pair sum bar-invariant: gcd(ell, h) - ell - h."""
    return gcd(path.ell, path.h) - path.ell - path.h


def rupel_expansion(r: int, n: int, alpha: int = 1, beta: int = 0, cfg=None,
                    hv_sign: int = HV_SIGN):
    """q^(alpha*beta) X_n^alpha X_{n+1}^beta from compatible pairs.

    Cluster variables (alpha, beta) = (1, 0) use C_n for n >= 3 and, for
    n <= 0, C_{3-n} with X1 and X2 exchanged; for r = 1 the index is reduced
    mod 5. Other monomials use the path built from alpha blocks C_n and beta
    blocks C_{n+1}, which needs n >= 3."""
    from .qtorus import ConventionConfig, generator

    cfg = cfg or ConventionConfig()
    if (alpha, beta) != (1, 0):
        if n < 3:
            raise ValueError("monomial expansions need n >= 3")
        path = monomial_path(r, n - 1, beta, alpha).path
        return pair_expansion(path, r, expansion_shift(path), cfg, hv_sign=hv_sign)
    if r == 1:
        n = (n - 1) % 5 + 1
        if n == 3:
            return rupel_expansion_reflected(r, 5, cfg, hv_sign)
    if n in (1, 2):
        return generator(n, cfg)
    if n >= 3:
        path = cluster_path(r, n)
        return pair_expansion(path, r, expansion_shift(path), cfg, hv_sign=hv_sign)
    return rupel_expansion_reflected(r, 3 - n, cfg, hv_sign)


def rupel_expansion_reflected(r: int, m: int, cfg=None, hv_sign: int = HV_SIGN):
    """X_{3-m} from compatible pairs on C_m with X1 and X2 exchanged."""
    path = cluster_path(r, m)
    return pair_expansion(path, r, expansion_shift(path), cfg, swap=True, hv_sign=hv_sign)


class Fill(str, Enum):
    LEFT = "LeftFilled"
    RIGHT = "RightFilled"
    UNFILLED = "Unfilled"


class ShadowKind(str, Enum):
    RIGHT = "RightShadowed"
    LEFT = "LeftShadowed"
    NONE = "Unshadowed"


@dataclass(frozen=True)
class CascadeAssignment:
    """labels[i] = (j, m): eta_i carries the label nu_j^(m)."""

    path: DyckPath
    S2: frozenset
    r: int
    labels: dict

    def level(self, m: int) -> frozenset:
        """cas_m: edges m-cascade-paired with some edge of S2."""
        return frozenset(i for i, (_, k) in self.labels.items() if k == m)

    @property
    def edges(self) -> frozenset:
        return frozenset(self.labels)

    def partner(self, j: int, m: int | None = None) -> int | None:
        """The eta index carrying nu_j^(m) (m defaults to r)."""
        m = self.r if m is None else m
        for i, lab in self.labels.items():
            if lab == (j, m):
                return i
        return None

    def classification(self) -> dict[int, Fill]:
        out = {}
        for i in range(1, self.path.ell + 1):
            if i not in self.labels:
                out[i] = Fill.UNFILLED
            else:
                # named by the side the filling nu sits on, like left-shadowed
                j = self.labels[i][0]
                nu_left = self.path.nu_positions[j] < self.path.eta_positions[i]
                out[i] = Fill.LEFT if nu_left else Fill.RIGHT
        return out

    def local_cascade(self, j: int) -> tuple[int, int]:
        """(leftmost, rightmost) eta index labelled by nu_j."""
        mine = [i for i, (k, _) in self.labels.items() if k == j]
        return min(mine), max(mine)

    def arcs_noncrossing(self) -> bool:
        """Arcs from each nu to its level-r partner are nested or disjoint."""
        spans = []
        for j in self.S2:
            i = self.partner(j)
            a, b = self.path.eta_positions[i], self.path.nu_positions[j]
            spans.append((min(a, b), max(a, b)))
        for x in spans:
            for y in spans:
                if x < y and x[0] < y[0] < x[1] < y[1]:
                    return False
        return True


def _cascade_labels(path: DyckPath, S2, r: int) -> dict[int, tuple[int, int]]:
    """Label horizontals bottom-up. Each nu_j sends its r labels to the nearest
    free edges on its left; labels still waiting from lower verticals then fill
    the lowest free edges to the left of nu_j, and whatever is left at the end
    fills the lowest free edges overall."""
    if r * len(S2) > path.ell:
        raise PreconditionViolated(f"r|S2| = {r * len(S2)} exceeds ell = {path.ell}")
    labels: dict[int, tuple[int, int]] = {}
    pending: list[tuple[int, int]] = []
    for j in sorted(S2):
        here = path.nu_positions[j]
        free = [i for i in range(path.ell, 0, -1)
                if path.eta_positions[i] < here and i not in labels]
        own = [(j, m) for m in range(1, r + 1)]
        while own and free:
            labels[free.pop(0)] = own.pop(0)
        pending[:0] = own
        for i in reversed(free):
            if not pending:
                break
            labels[i] = pending.pop(0)
    for i in range(1, path.ell + 1):
        if not pending:
            break
        if i not in labels:
            labels[i] = pending.pop(0)
    return labels


def cascade(path: DyckPath, S2, r: int, blocks=None) -> CascadeAssignment:
    """Cascade of S2; with blocks (from monomial_path) it is computed on each
    block separately."""
    S2 = frozenset(S2)
    if not blocks:
        return CascadeAssignment(path, S2, r, _cascade_labels(path, S2, r))
    labels = {}
    for blk in blocks:
        local = {j - blk.nu_offset for j in S2
                 if blk.nu_offset < j <= blk.nu_offset + blk.path.h}
        for i, (j, m) in _cascade_labels(blk.path, local, r).items():
            labels[i + blk.eta_offset] = (j + blk.nu_offset, m)
    return CascadeAssignment(path, S2, r, labels)


@dataclass(frozen=True)
class ShadowData:
    local: dict  # nu index -> frozenset of eta indices
    paired: dict  # nu index -> eta index or None
    kinds: dict  # eta index -> ShadowKind

    @property
    def edges(self) -> frozenset:
        out = set()
        for s in self.local.values():
            out |= s
        return frozenset(out)


def shadow(path: DyckPath, S2, r: int, wrap: Wrap = Wrap.CYCLIC) -> ShadowData:
    local, paired = {}, {}
    for j in sorted(S2):
        local[j], paired[j] = local_shadow(path, S2, r, j, wrap)
    kinds = {}
    for i in range(1, path.ell + 1):
        owners = [j for j, s in local.items() if i in s]
        if not owners:
            kinds[i] = ShadowKind.NONE
        elif any(path.nu_positions[j] > path.eta_positions[i] for j in owners):
            kinds[i] = ShadowKind.RIGHT
        else:
            kinds[i] = ShadowKind.LEFT
    return ShadowData(local, paired, kinds)


def iota(path: DyckPath, S2, r: int, blocks=None) -> dict[int, int]:
    """The involution on horizontal edges swapping the s-th left-filled edge
    with the s-th left-shadowed edge."""
    fills = cascade(path, S2, r, blocks).classification()
    kinds = shadow(path, S2, r).kinds
    left_filled = [i for i in sorted(fills) if fills[i] is Fill.LEFT]
    left_shadowed = [i for i in sorted(kinds) if kinds[i] is ShadowKind.LEFT]
    if len(left_filled) != len(left_shadowed):
        raise PreconditionViolated("left-filled and left-shadowed counts differ")
    swap = {i: i for i in range(1, path.ell + 1)}
    for x, y in zip(left_filled, left_shadowed):
        swap[x], swap[y] = y, x
    return swap


def lambda_map(pair: CompatiblePair, blocks=None) -> CompatiblePair:
    swap = iota(pair.path, pair.S2, pair.r, blocks)
    return CompatiblePair(pair.path, frozenset(swap[i] for i in pair.S1), pair.S2, pair.r)


def lambda_inverse(pair: CompatiblePair, blocks=None) -> CompatiblePair:
    # iota is an involution fixing S2, so lambda is its own inverse
    return lambda_map(pair, blocks)


@dataclass(frozen=True)
class VerticalFlags:
    overshadowing: bool
    overflowing: bool
    protruding: bool


def protruding_edges(path: DyckPath, r: int) -> list[int]:
    """nu indices with fewer than r horizontal edges immediately to their left."""
    out = []
    run = 0
    for e in path.edges:
        if e.horizontal:
            run += 1
        else:
            if run < r:
                out.append(e.index)
            run = 0
    return out


def classify_vertical(pair: CompatiblePair, blocks=None) -> dict[int, VerticalFlags]:
    path, r = pair.path, pair.r
    sh = shadow(path, pair.S2, r)
    cas = cascade(path, pair.S2, r, blocks) if pair.is_positive() else None
    prot = set(protruding_edges(path, r))
    out = {}
    for j in range(1, path.h + 1):
        over_sh = j in pair.S2 and sh.paired.get(j) in pair.S1
        over_fl = bool(cas) and j in pair.S2 and cas.partner(j) in pair.S1
        out[j] = VerticalFlags(over_sh, over_fl, j in prot)
    return out
