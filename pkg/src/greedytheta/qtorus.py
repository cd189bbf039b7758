"""Rank-two quantum torus and the exchange-recursion oracle."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Mapping

from .qalgebra import ONE, ZERO, QLaurent, qpow


class ExchangeSide(str, Enum):
    NEW_ON_LEFT = "NewOnLeft"  # X_{n+1} X_{n-1} = q^r X_n^r + 1
    NEW_ON_RIGHT = "NewOnRight"  # X_{n-1} X_{n+1} = q^r X_n^r + 1


class Side(str, Enum):
    LEFT = "Left"
    RIGHT = "Right"


@dataclass(frozen=True)
class ConventionConfig:
    """Normal ordering rule X2^b X1^a = q^(2*sign*a*b) X1^a X2^b, plus the
    reading order of the exchange relation."""

    commutation_sign: int = 1
    exchange_side: ExchangeSide = ExchangeSide.NEW_ON_LEFT

    def __post_init__(self):
        if self.commutation_sign not in (1, -1):
            raise ValueError("commutation_sign must be +1 or -1")
        object.__setattr__(self, "exchange_side", ExchangeSide(self.exchange_side))

    def label(self) -> str:
        sign = "+" if self.commutation_sign > 0 else "-"
        return f"sign={sign}1,{self.exchange_side.value}"


class DivisionError(ArithmeticError):
    pass


class NotDivisible(DivisionError):
    pass


class NonUnitLeadingCoefficient(DivisionError):
    pass


def _order_key(exp):
    a, b = exp
    return (a + b, a, b)


class TorusElement:
    """Sum of c_(a,b)(q) X1^a X2^b in normal order."""

    __slots__ = ("_terms", "cfg")

    def __init__(self, terms: Mapping[tuple[int, int], QLaurent] | None = None,
                 cfg: ConventionConfig | None = None) -> None:
        self.cfg = cfg or ConventionConfig()
        clean = {}
        if terms:
            for exp, c in terms.items():
                if isinstance(c, int):
                    c = QLaurent.const(c)
                if c:
                    clean[(int(exp[0]), int(exp[1]))] = c
        self._terms = clean

    @classmethod
    def monomial(cls, a: int, b: int, coeff: QLaurent | int = ONE,
                 cfg: ConventionConfig | None = None) -> TorusElement:
        return cls({(a, b): coeff}, cfg)

    @classmethod
    def one(cls, cfg=None) -> TorusElement:
        return cls.monomial(0, 0, ONE, cfg)

    @property
    def terms(self) -> dict[tuple[int, int], QLaurent]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, a: int, b: int) -> QLaurent:
        return self._terms.get((a, b), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _like(self, terms):
        return TorusElement(terms, self.cfg)

    def __add__(self, other):
        if isinstance(other, (int, QLaurent)):
            other = TorusElement.monomial(0, 0, other, self.cfg)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, ZERO) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, QLaurent)):
            other = TorusElement.monomial(0, 0, other, self.cfg)
        return self + (-other)

    def scale(self, c: QLaurent | int) -> TorusElement:
        return self._like({e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QLaurent)):
            return self.scale(other)
        s2 = 2 * self.cfg.commutation_sign
        out: dict[tuple[int, int], QLaurent] = {}
        for (a, b), c in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a + a2, b + b2)
                term = (c * c2).shift(s2 * b * a2)
                out[key] = out.get(key, ZERO) + term
        return self._like(out)

    def __rmul__(self, other):
        if isinstance(other, (int, QLaurent)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need exact_divide")
        result = TorusElement.one(self.cfg)
        for _ in range(k):
            result = result * self
        return result

    def bar(self) -> TorusElement:
        s2 = 2 * self.cfg.commutation_sign
        return self._like({(a, b): c.bar().shift(s2 * a * b)
                           for (a, b), c in self._terms.items()})

    def is_bar_invariant(self) -> bool:
        return self.bar() == self

    def swap_generators(self) -> TorusElement:
        """Image under X1 <-> X2 (an anti-automorphism), renormalized."""
        s2 = 2 * self.cfg.commutation_sign
        # c X1^a X2^b -> c X2^a X1^b = c q^(s2*a*b) X1^b X2^a
        return self._like({(b, a): c.shift(s2 * a * b)
                           for (a, b), c in self._terms.items()})

    def evaluate(self, x1=1, x2=1, q=1):
        total = 0
        for (a, b), c in self._terms.items():
            total += c.evaluate(q) * _power(x1, a) * _power(x2, b)
        return total

    def classical(self) -> dict[tuple[int, int], int]:
        return {e: c.evaluate(1) for e, c in sorted(self._terms.items())}

    def leading(self):
        exp = max(self._terms, key=_order_key)
        return exp, self._terms[exp]

    def trailing(self):
        exp = min(self._terms, key=_order_key)
        return exp, self._terms[exp]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self._terms.items()):
            if len(c) == 1:
                (e, k), = c.items()
                coef = ("" if k == 1 else "-" if k == -1 else f"{k} ") + f"q^{e}"
            else:
                coef = f"({c})"
            parts.append(f"{coef} X1^{a} X2^{b}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return [[a, b, c.to_json()] for (a, b), c in sorted(self._terms.items())]


def _power(x, k):
    from fractions import Fraction
    if k >= 0:
        return x**k
    return Fraction(1) / Fraction(x) ** (-k)


def multiply(u: TorusElement, v: TorusElement, cfg: ConventionConfig | None = None):
    if cfg is not None:
        u = TorusElement(u.terms, cfg)
    return u * v


def bar_involution(u: TorusElement) -> TorusElement:
    return u.bar()


def exact_divide(dividend: TorusElement, divisor: TorusElement,
                 side: Side = Side.RIGHT) -> TorusElement:
    """Q with Q*divisor == dividend (Right) or divisor*Q == dividend (Left)."""
    side = Side(side)
    cfg = dividend.cfg
    if divisor.is_zero():
        raise ZeroDivisionError("division by the zero element")
    lead_exp, lead_coef = divisor.leading()
    if not lead_coef.is_unit():
        raise NonUnitLeadingCoefficient(f"leading coefficient {lead_coef} is not a unit")
    if dividend.is_zero():
        return TorusElement({}, cfg)
    sign = next(iter(lead_coef.coeffs.values()))
    lead_q = lead_coef.min_degree()
    s2 = 2 * cfg.commutation_sign
    # every quotient exponent is bounded below by this
    floor_exp, _ = dividend.trailing()
    tail_exp, _ = divisor.trailing()
    floor_key = _order_key((floor_exp[0] - tail_exp[0], floor_exp[1] - tail_exp[1]))

    quotient: dict[tuple[int, int], QLaurent] = {}
    remainder = dividend
    while not remainder.is_zero():
        (ma, mb), c = remainder.leading()
        qa, qb = ma - lead_exp[0], mb - lead_exp[1]
        if _order_key((qa, qb)) < floor_key:
            raise NotDivisible("remainder cannot be cancelled")
        if side is Side.RIGHT:
            twist = s2 * qb * lead_exp[0]
        else:
            twist = s2 * lead_exp[1] * qa
        coef = c.shift(-lead_q - twist) * sign
        term = TorusElement.monomial(qa, qb, coef, cfg)
        quotient[(qa, qb)] = quotient.get((qa, qb), ZERO) + coef
        prod = term * divisor if side is Side.RIGHT else divisor * term
        remainder = remainder - prod
    return TorusElement(quotient, cfg)


def generator(i: int, cfg: ConventionConfig | None = None) -> TorusElement:
    return TorusElement.monomial(1, 0, cfg=cfg) if i == 1 else TorusElement.monomial(0, 1, cfg=cfg)


MAX_INDEX = 40


@lru_cache(maxsize=None)
def cluster_variable(n: int, r: int, cfg: ConventionConfig = ConventionConfig()) -> TorusElement:
    """X_n from the exchange recursion, by exact division in the torus."""
    if abs(n) > MAX_INDEX:
        raise ValueError(f"|n| must be at most {MAX_INDEX}")
    if n == 1 or n == 2:
        return generator(n, cfg)
    new_on_left = cfg.exchange_side is ExchangeSide.NEW_ON_LEFT
    if n > 2:
        prev, mid = cluster_variable(n - 2, r, cfg), cluster_variable(n - 1, r, cfg)
        rhs = (mid ** r).scale(qpow(r)) + 1
        # X_n * X_{n-2} = rhs  or  X_{n-2} * X_n = rhs
        return exact_divide(rhs, prev, Side.RIGHT if new_on_left else Side.LEFT)
    nxt, mid = cluster_variable(n + 2, r, cfg), cluster_variable(n + 1, r, cfg)
    rhs = (mid ** r).scale(qpow(r)) + 1
    # X_{n+2} * X_n = rhs  or  X_n * X_{n+2} = rhs
    return exact_divide(rhs, nxt, Side.LEFT if new_on_left else Side.RIGHT)


def exchange_residual(n: int, r: int, cfg: ConventionConfig = ConventionConfig()) -> TorusElement:
    """Left side minus right side of the exchange relation centred at X_n."""
    hi, mid, lo = (cluster_variable(k, r, cfg) for k in (n + 1, n, n - 1))
    lhs = hi * lo if cfg.exchange_side is ExchangeSide.NEW_ON_LEFT else lo * hi
    return lhs - (mid ** r).scale(qpow(r)) - 1


def monomial_prefactor_sign(n: int, r: int, cfg: ConventionConfig = ConventionConfig()) -> int:
    """Sign s making q^(s*alpha*beta) X_n^alpha X_{n+1}^beta bar-invariant."""
    u, v = cluster_variable(n, r, cfg), cluster_variable(n + 1, r, cfg)
    for s in (1, -1):
        if (u * v).scale(qpow(s)).is_bar_invariant():
            return s
    raise ArithmeticError("no bar-invariant normalization of X_n X_{n+1}")


def cluster_monomial(n: int, alpha: int, beta: int, r: int,
                     cfg: ConventionConfig = ConventionConfig()) -> TorusElement:
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be nonnegative")
    u, v = cluster_variable(n, r, cfg), cluster_variable(n + 1, r, cfg)
    product = (u ** alpha) * (v ** beta)
    if alpha and beta:
        s = monomial_prefactor_sign(n, r, cfg)
        product = product.scale(qpow(s * alpha * beta))
    return product
