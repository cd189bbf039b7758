"""Exact arithmetic in Z[q, q^-1]."""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Mapping


class QLaurent:
    """Integer Laurent polynomial in q, stored as {exponent: coefficient}.

    Zero coefficients are never stored, so equality is structural.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None) -> None:
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    clean[int(e)] = int(c)
        self._coeffs = clean
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> QLaurent:
        return cls({exponent: coeff})

    @classmethod
    def const(cls, c: int) -> QLaurent:
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QLaurent.const(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    @staticmethod
    def _lift(x) -> QLaurent:
        if isinstance(x, QLaurent):
            return x
        if isinstance(x, int):
            return QLaurent.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return QLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> QLaurent:
        return QLaurent({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QLaurent:
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = QLaurent.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> QLaurent:
        """Multiply by q^k."""
        return QLaurent({e + k: c for e, c in self._coeffs.items()})

    def bar(self) -> QLaurent:
        return QLaurent({-e: c for e, c in self._coeffs.items()})

    def substitute_power(self, m: int) -> QLaurent:
        if m < 1:
            raise ValueError("power must be positive")
        return QLaurent({m * e: c for e, c in self._coeffs.items()})

    def evaluate(self, q=1):
        """Value at a number q; exact for ints and Fractions."""
        total = 0
        for e, c in self._coeffs.items():
            if e >= 0:
                total += c * q**e
            else:
                total += c * Fraction(1) / Fraction(q) ** (-e)
        return total

    def is_unit(self) -> bool:
        return len(self._coeffs) == 1 and abs(next(iter(self._coeffs.values()))) == 1

    def min_degree(self) -> int:
        return min(self._coeffs)

    def max_degree(self) -> int:
        return max(self._coeffs)

    def __repr__(self) -> str:
        return f"QLaurent({self._coeffs_sorted()})"

    def _coeffs_sorted(self) -> dict[int, int]:
        return dict(sorted(self._coeffs.items()))

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self._coeffs.items()):
            if e == 0:
                body = str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self._coeffs.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> QLaurent:
        return cls({int(e): int(c) for e, c in data})


ZERO = QLaurent()
ONE = QLaurent.const(1)


def qpow(e: int) -> QLaurent:
    return QLaurent.monomial(e)


def qint(k: int) -> QLaurent:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return QLaurent({k - 1 - 2 * i: 1 for i in range(k)})


def qfactorial(k: int) -> QLaurent:
    out = ONE
    for i in range(2, k + 1):
        out = out * qint(i)
    return out


@lru_cache(maxsize=None)
def qbinom(l: int, k: int) -> QLaurent:
    """Bar-invariant Gaussian binomial via the symmetric q-Pascal rule.

    binom(l, k) = q^k binom(l-1, k) + q^-(l-k) binom(l-1, k-1)
    """
    if k < 0 or l < 0 or k > l:
        return ZERO
    if k == 0 or k == l:
        return ONE
    return qbinom(l - 1, k).shift(k) + qbinom(l - 1, k - 1).shift(-(l - k))


def qbinom_in(l: int, k: int, m: int) -> QLaurent:
    """qbinom(l, k) with q replaced by q^m."""
    return qbinom(l, k).substitute_power(m)


def substitute_power(f: QLaurent, m: int) -> QLaurent:
    return f.substitute_power(m)


def bar(f: QLaurent) -> QLaurent:
    return f.bar()


def subset_exponent(h: int, J: Iterable[int]) -> int:
    """Exponent of the monomial attached to J inside qbinom(h, |J|).

    Summing q^subset_exponent(h, J) over all k-subsets of {1..h} gives
    qbinom(h, k).
    """
    J = set(J)
    if any(j < 1 or j > h for j in J):
        raise ValueError(f"{sorted(J)} is not a subset of [1, {h}]")
    return 2 * sum(J) - len(J) * (h + 1)
