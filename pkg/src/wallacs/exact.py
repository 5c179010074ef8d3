"""Exact integer/rational helpers.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored reduced with a positive denominator (zero is ``0/1``).

Bernoulli numbers follow the topologists' convention: ``bernoulli(m)``
is the absolute value of the modern ``B_{2m}``, so ``B_1 = 1/6``,
``B_2 = 1/30``, ``B_3 = 1/42`` and every value is positive.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction

ExactRational = Fraction

__all__ = [
    "DomainError",
    "NotTwoAdicIntegerError",
    "ExactRational",
    "bernoulli",
    "modern_bernoulli",
    "two_adic_valuation",
    "mod2_of_2adic_integer",
    "is_integral",
    "factorial",
    "binomial",
]


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class NotTwoAdicIntegerError(DomainError):
    """A rational with even reduced denominator was reduced mod 2."""


_modern: list[Fraction] = [Fraction(1)]
_lock = threading.Lock()


def modern_bernoulli(t: int) -> Fraction:
    """Modern signed Bernoulli number ``B_t`` (with ``B_1 = -1/2``).

    Uses the recurrence ``sum_{j=0}^{t} C(t+1, j) B_j = 0`` and memoizes
    the table.
    """
    if t < 0:
        raise DomainError(f"Bernoulli index must be >= 0, got {t}")
    with _lock:
        while len(_modern) <= t:
            s = len(_modern)
            acc = sum(math.comb(s + 1, j) * b for j, b in enumerate(_modern))
            _modern.append(-acc / (s + 1))
        return _modern[t]


def bernoulli(m: int) -> Fraction:
    """Topologists' Bernoulli number ``B_m = |B_{2m}|`` for ``m >= 1``."""
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"bernoulli(m) requires m >= 1, got {m!r}")
    return abs(modern_bernoulli(2 * m))


def _nu2(a: int) -> int:
    return (a & -a).bit_length() - 1


def two_adic_valuation(q: Fraction | int) -> int:
    q = Fraction(q)
    if q == 0:
        raise DomainError("2-adic valuation of 0 is infinite")
    return _nu2(abs(q.numerator)) - _nu2(q.denominator)


def mod2_of_2adic_integer(q: Fraction | int) -> int:
    """Residue mod 2 of a rational whose reduced denominator is odd."""
    q = Fraction(q)
    if q.denominator % 2 == 0:
        raise NotTwoAdicIntegerError(f"{q} is not a 2-adic integer")
    # odd denominator is a unit mod 2
    return q.numerator % 2


def is_integral(q: Fraction | int) -> bool:
    return Fraction(q).denominator == 1


def factorial(t: int) -> int:
    if t < 0:
        raise DomainError(f"factorial of negative number {t}")
    return math.factorial(t)


def binomial(t: int, s: int) -> int:
    if t < 0 or s < 0 or s > t:
        raise DomainError(f"binomial({t}, {s}) requires 0 <= s <= t")
    return math.comb(t, s)
