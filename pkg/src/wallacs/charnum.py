"""Characteristic numbers determined by ``(chi, tau)``.

Pontrjagin data follow Kervaire/Wall:

* ``p_{n/4} = a * (n/2 - 1)! * chi`` for ``n = 0 mod 4`` (the overall sign
  is ambiguous; ``+`` is used because everything downstream only sees
  ``I(p, p)`` and ``chi mod 2``),
* ``p_{n/2}`` as a number on the top class, for ``n`` even.

``a_hat`` and ``a_hat_C`` are the integers A^(M) and <ch(TM (x) C) A^(M), [M]>.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import DomainError, bernoulli, binomial, factorial
from .wall import WallInvariants, euler_number, pair, signature

__all__ = [
    "CharNumbers",
    "a_coefficient",
    "a_hat",
    "a_hat_C",
    "char_numbers",
    "pontrjagin_half",
    "pontrjagin_quarter",
]


def _need_mod4(n: int) -> None:
    if n % 4:
        raise DomainError(f"defined only for n = 0 mod 4, got n = {n}")


def a_coefficient(n: int) -> int:
    _need_mod4(n)
    return 1 if n % 8 == 0 else 2


def pontrjagin_quarter(w: WallInvariants) -> tuple[int, ...]:
    _need_mod4(w.n)
    if w.chi is None:
        raise DomainError("chi is required to compute p_{n/4}")
    c = a_coefficient(w.n) * factorial(w.n // 2 - 1)
    return tuple(c * x for x in w.chi)


def _tau_coefficient(n: int) -> Fraction:
    # n! / (2^n (2^{n-1} - 1) B_{n/2})
    return factorial(n) / (2**n * (2 ** (n - 1) - 1) * bernoulli(n // 2))


def _chi_square_coefficient(n: int) -> Fraction:
    a = a_coefficient(n)
    h = n // 2
    bracket = 1 - Fraction((2 ** (h - 1) - 1) ** 2, 2 ** (n - 1) - 1) * binomial(n, h) * (
        bernoulli(n // 4) ** 2 / bernoulli(h)
    )
    return Fraction(a * a, 2) * factorial(h - 1) ** 2 * bracket


def pontrjagin_half(w: WallInvariants, tau: Optional[int] = None) -> Fraction:
    """Exact value of ``p_{n/2}(M)`` on the fundamental class (n even)."""
    if w.n % 2:
        raise DomainError("p_{n/2} is defined only for even n")
    if tau is None:
        tau = signature(w)
    value = _tau_coefficient(w.n) * tau
    if w.n % 4 == 0:
        chi = w.chi_or_zero()
        value += _chi_square_coefficient(w.n) * pair(w, chi, chi)
    return value


def _p_quarter_square(w: WallInvariants) -> int:
    p = pontrjagin_quarter(w)
    return pair(w, p, p)


def a_hat(w: WallInvariants) -> Fraction:
    _need_mod4(w.n)
    n = w.n
    b_half, b_quarter = bernoulli(n // 2), bernoulli(n // 4)
    p_half = pontrjagin_half(w)
    top = b_half / (2 * factorial(n))
    return -top * p_half + Fraction(1, 2) * (
        b_quarter**2 / (4 * factorial(n // 2) ** 2) + top
    ) * _p_quarter_square(w)


def a_hat_C(w: WallInvariants) -> Fraction:
    _need_mod4(w.n)
    n = w.n
    b_half, b_quarter = bernoulli(n // 2), bernoulli(n // 4)
    sq = (2 ** (n // 2) - 1) ** 2
    ratio = ((-1) ** (n // 4) * b_half - b_quarter) / (b_half * b_quarter)
    tau = signature(w)
    first = 2 * n * (1 + 1 / b_half + Fraction(2 ** (n - 1) - 1, sq) * ratio) * a_hat(w)
    return first + ratio / sq * Fraction(n * tau, 2**n)


@dataclass(frozen=True)
class CharNumbers:
    euler: int
    tau: Optional[int] = None
    p_quarter: Optional[tuple[int, ...]] = None
    p_half: Optional[Fraction] = None
    a_coeff: Optional[int] = None
    a_hat: Optional[Fraction] = None
    a_hat_C: Optional[Fraction] = None


def char_numbers(w: WallInvariants) -> CharNumbers:
    """All derived numbers that make sense for ``w.n``."""
    if w.n % 2:
        return CharNumbers(euler=euler_number(w))
    tau = signature(w)
    if w.n % 4:
        return CharNumbers(euler=euler_number(w), tau=tau, p_half=pontrjagin_half(w, tau))
    return CharNumbers(
        euler=euler_number(w),
        tau=tau,
        p_quarter=pontrjagin_quarter(w),
        p_half=pontrjagin_half(w, tau),
        a_coeff=a_coefficient(w.n),
        a_hat=a_hat(w),
        a_hat_C=a_hat_C(w),
    )
