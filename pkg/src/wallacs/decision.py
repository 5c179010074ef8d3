"""Existence of (stable) almost complex structures from Wall invariants.

``decide_stable`` and ``decide_acs`` are total over validated systems.
All quantities are exact rationals; congruences mod 2 are taken on
2-adic integers only.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import charnum
from .exact import DomainError, bernoulli, factorial, mod2_of_2adic_integer
from .quadrep import DEFAULT_SEARCH_BOUND, RepOutcome, RepProblem, RepStatus, solve
from .wall import WallInvariants, euler_number, pair, signature

__all__ = [
    "AcsVerdict",
    "Answer",
    "Condition",
    "InconsistentInvariantsError",
    "StableVerdict",
    "acs_case",
    "decide_acs",
    "decide_stable",
    "rep_target",
    "stable_quantity",
]


class InconsistentInvariantsError(DomainError):
    """A quantity proven to be a 2-adic integer for manifolds is not one."""


class Answer(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Condition:
    """One audited sub-condition: what was checked, its exact value, outcome."""

    name: str
    value: str
    holds: bool


@dataclass(frozen=True)
class StableVerdict:
    admits: bool
    case_label: int
    detail: str
    conditions: tuple[Condition, ...] = ()


@dataclass(frozen=True)
class AcsVerdict:
    admits: Answer
    stable: StableVerdict
    case_label: int
    reason: str
    witness: Optional[tuple[int, ...]] = None
    target: Optional[int] = None
    rep: Optional[RepOutcome] = None
    conditions: tuple[Condition, ...] = ()


def stable_quantity(w: WallInvariants, tau: Optional[int] = None) -> Fraction:
    """The rational whose parity decides stability when ``n = 0 mod 4``.

    ``n = 0 mod 8``: ``(B_{n/2} - B_{n/4}) / (B_{n/2} B_{n/4}) * n tau / 2^n``
    ``n = 4 mod 8``: ``(B_{n/2} + B_{n/4}) / (B_{n/2} B_{n/4}) * tau / 2^(n-2)``
    """
    n = w.n
    if n % 4:
        raise DomainError("stable congruence quantity needs n = 0 mod 4")
    if tau is None:
        tau = signature(w)
    bh, bq = bernoulli(n // 2), bernoulli(n // 4)
    if n % 8 == 0:
        return (bh - bq) / (bh * bq) * Fraction(n * tau, 2**n)
    return (bh + bq) / (bh * bq) * Fraction(tau, 2 ** (n - 2))


def _parity(q: Fraction) -> int:
    if q.denominator % 2 == 0:
        raise InconsistentInvariantsError(
            f"{q} is not a 2-adic integer; no manifold has these invariants")
    return mod2_of_2adic_integer(q)


def decide_stable(w: WallInvariants) -> StableVerdict:
    r = w.n % 8
    if r in (2, 3, 5, 6, 7):
        return StableVerdict(True, r, "always-admits")
    chi = w.chi_or_zero()
    if r == 1:
        zero = not any(chi)
        cond = Condition("chi = 0", str(list(chi)), zero)
        return StableVerdict(zero, r, "chi-zero" if zero else "chi-nonzero", (cond,))

    q = stable_quantity(w)
    bit = _parity(q)
    qcond = Condition("congruence quantity = 0 mod 2", str(q), bit == 0)
    if r == 4:
        return StableVerdict(bit == 0, r, "congruence-value-0" if bit == 0 else "congruence-value-1",
                             (qcond,))
    even = all(c % 2 == 0 for c in chi)
    ccond = Condition("chi = 0 mod 2", str(list(chi)), even)
    if not even:
        detail = "chi-odd"
    else:
        detail = "congruence-value-0" if bit == 0 else "congruence-value-1"
    return StableVerdict(even and bit == 0, r, detail, (ccond, qcond))


def acs_case(n: int) -> int:
    """Which of the five almost-complex cases applies to ``n``."""
    if n % 4 == 0:
        return 1
    if n % 8 == 2:
        return 2
    if n % 8 == 6:
        return 3
    return 4 if n % 4 == 1 else 5


def rep_target(w: WallInvariants) -> Fraction:
    """``(2(k+2) + p_{n/2}) / ((n/2 - 1)!)^2`` for ``n = 2 mod 4``."""
    return (2 * (w.k + 2) + charnum.pontrjagin_half(w)) / factorial(w.n // 2 - 1) ** 2


def decide_acs(w: WallInvariants, search_bound: int = DEFAULT_SEARCH_BOUND) -> AcsVerdict:
    stable = decide_stable(w)
    case = acs_case(w.n)
    conds: list[Condition] = []
    witness = target = rep = None
    answer = Answer.NO

    if case == 1:
        p_half = charnum.pontrjagin_half(w)
        p = charnum.pontrjagin_quarter(w)
        lhs = 4 * p_half - pair(w, p, p)
        rhs = 8 * euler_number(w)
        ok = lhs == rhs
        conds.append(Condition("4 p_{n/2} - I(p_{n/4}, p_{n/4}) = 8(k+2)", f"{lhs} vs {rhs}", ok))
        reason = "identity-holds" if ok else "identity-fails"
        answer = Answer.YES if ok else Answer.NO
    elif case in (2, 3):
        t = rep_target(w)
        if t.denominator != 1:
            conds.append(Condition("representation target is an integer", str(t), False))
            reason = "target-not-integral"
        else:
            target = int(t)
            conds.append(Condition("representation target is an integer", str(t), True))
            congruence = tuple(c % 2 for c in w.chi_or_zero()) if case == 2 else None
            rep = solve(RepProblem(w.gram, target, congruence, search_bound))
            conds.append(Condition("I(x, x) = target is solvable", rep.status.value, rep.found))
            if rep.found:
                answer, witness, reason = Answer.YES, rep.witness, "witness-found"
            elif rep.status is RepStatus.UNKNOWN_WITHIN_BOUND:
                answer, reason = Answer.UNKNOWN, "search-bound-exhausted"
            elif rep.status is RepStatus.NONE_OBSTRUCTION:
                reason = "not-representable:" + rep.obstruction.value
            else:
                reason = "not-representable"
    else:
        modulus = factorial(w.n - 1) * (2 if case == 4 else 1)
        e = euler_number(w)
        ok = e % modulus == 0
        conds.append(Condition(f"{modulus} divides e(M) = 2 - k", str(e), ok))
        reason = "divisible" if ok else "divisibility"
        answer = Answer.YES if ok else Answer.NO

    if not stable.admits:
        # the conjunction fails regardless; sub-conditions stay in the report
        answer, witness, reason = Answer.NO, None, "stable-fails"
    return AcsVerdict(answer, stable, case, reason, witness, target, rep, tuple(conds))
