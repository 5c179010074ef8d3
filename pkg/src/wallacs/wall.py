"""Wall invariant systems of closed (n-1)-connected 2n-manifolds.

A system is modelled formally as ``(n, k, gram, chi)``: the half dimension,
the middle Betti number, the Gram matrix of the intersection form on
``H^n(M; Z) = Z^k`` and the components of the stabilized normal invariant
``chi`` (only when its coefficient group ``KO~(S^n)`` is nonzero).
Nothing here checks that a system is realized by an actual manifold.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import DomainError

__all__ = [
    "ChiGroup",
    "Finding",
    "ValidationReport",
    "WallInvariants",
    "chi_coefficient_group",
    "congruence_diagonal",
    "determinant",
    "euler_number",
    "pair",
    "signature",
    "validate",
]

Matrix = tuple[tuple[int, ...], ...]


class ChiGroup(str, enum.Enum):
    INTEGER = "IntegerGroup"
    ORDER_TWO = "OrderTwoGroup"
    TRIVIAL = "TrivialGroup"


def chi_coefficient_group(n: int) -> ChiGroup:
    """Coefficient group ``KO~(S^n)`` of chi, by ``n mod 8``."""
    r = n % 8
    if r in (0, 4):
        return ChiGroup.INTEGER
    if r in (1, 2):
        return ChiGroup.ORDER_TWO
    return ChiGroup.TRIVIAL


@dataclass(frozen=True)
class WallInvariants:
    n: int
    k: int
    gram: Matrix
    chi: Optional[tuple[int, ...]] = None
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "gram", tuple(tuple(int(a) for a in row) for row in self.gram))
        chi = self.chi
        if chi is not None and len(chi) == 0 and chi_coefficient_group(self.n) is ChiGroup.TRIVIAL:
            chi = None
        if chi is not None:
            chi = tuple(int(c) for c in chi)
            if chi_coefficient_group(self.n) is ChiGroup.ORDER_TWO:
                chi = tuple(c % 2 for c in chi)
        elif self.k == 0 and chi_coefficient_group(self.n) is not ChiGroup.TRIVIAL:
            chi = ()
        object.__setattr__(self, "chi", chi)

    @property
    def residue(self) -> int:
        return self.n % 8

    def chi_or_zero(self) -> tuple[int, ...]:
        return self.chi if self.chi is not None else (0,) * self.k


@dataclass(frozen=True)
class Finding:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Finding, ...] = ()
    warnings: tuple[Finding, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [f.code for f in self.violations]


def determinant(gram: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Gaussian elimination over Q (zero multipliers skipped)."""
    a = [[Fraction(x) for x in row] for row in gram]
    size = len(a)
    det = Fraction(1)
    for i in range(size):
        piv = next((r for r in range(i, size) if a[r][i] != 0), None)
        if piv is None:
            return 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        for r in range(i + 1, size):
            f = a[r][i] / a[i][i]
            if f:
                row_i = a[i]
                a[r] = [x - f * y for x, y in zip(a[r], row_i)]
    return int(det)


def congruence_diagonal(gram: Sequence[Sequence[int]]) -> list[Fraction]:
    """Diagonal of a form congruent to ``gram`` over Q (symmetric input).

    Symmetric Gaussian elimination; when every remaining diagonal entry
    vanishes, the basis vector ``e_i`` is replaced by ``e_i + e_j`` for an
    ``a_ij != 0``, which makes the new pivot ``2 a_ij``. Zero rows yield zeros.
    """
    a = [[Fraction(x) for x in row] for row in gram]
    size = len(a)
    for row in a:
        if len(row) != size:
            raise DomainError("Gram matrix must be square")
    if any(a[i][j] != a[j][i] for i in range(size) for j in range(i)):
        raise DomainError("congruence diagonalization needs a symmetric matrix")
    diag: list[Fraction] = []
    active = list(range(size))
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is None:
            pair_ij = next(
                ((i, j) for i in active for j in active if i != j and a[i][j] != 0), None
            )
            if pair_ij is None:
                diag.extend(Fraction(0) for _ in active)
                break
            i, j = pair_ij
            for t in range(size):
                a[i][t] += a[j][t]
            for t in range(size):
                a[t][i] += a[t][j]
            p = i
        piv = a[p][p]
        active.remove(p)
        for r in active:
            f = a[r][p] / piv
            if f:
                for c in active:
                    a[r][c] -= f * a[p][c]
        for r in active:
            a[r][p] = a[p][r] = Fraction(0)
        diag.append(piv)
    return diag


def _is_symmetric(g: Matrix) -> bool:
    return all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(i))


def _is_skew(g: Matrix) -> bool:
    return all(g[i][j] == -g[j][i] for i in range(len(g)) for j in range(i + 1))


def signature(w: WallInvariants) -> int:
    """Index tau of the intersection form (n even only)."""
    if w.n % 2:
        raise DomainError("signature undefined for skew forms")
    d = congruence_diagonal(w.gram)
    return sum(1 for x in d if x > 0) - sum(1 for x in d if x < 0)


def euler_number(w: WallInvariants) -> int:
    return w.k + 2 if w.n % 2 == 0 else 2 - w.k


def pair(w: WallInvariants, x: Sequence[int], y: Sequence[int]) -> int:
    """``I(x, y) = x^T G y``."""
    if len(x) != w.k or len(y) != w.k:
        raise DomainError(f"vectors must have length {w.k}")
    return sum(xi * gij * yj for xi, row in zip(x, w.gram) for gij, yj in zip(row, y))


def _structural(w: WallInvariants) -> list[Finding]:
    out: list[Finding] = []
    if w.n < 3:
        out.append(Finding("n-too-small", f"n must be >= 3, got {w.n}"))
    if w.k < 0:
        out.append(Finding("k-negative", f"Betti number must be >= 0, got {w.k}"))
        return out
    if len(w.gram) != w.k or any(len(row) != w.k for row in w.gram):
        out.append(Finding("gram-shape", f"intersection form must be {w.k}x{w.k}"))
        return out
    if w.n % 2 == 0 and not _is_symmetric(w.gram):
        out.append(Finding("not-symmetric", "intersection form must be symmetric for even n"))
    if w.n % 2 == 1:
        if not _is_skew(w.gram):
            out.append(Finding(
                "not-antisymmetric",
                "intersection form must be antisymmetric with zero diagonal for odd n",
            ))
        if w.k % 2:
            out.append(Finding("odd-rank-skew", "a skew unimodular form has even rank"))
    d = determinant(w.gram)
    if abs(d) != 1:
        out.append(Finding("not-unimodular", f"not unimodular: det = {d}"))
    group = chi_coefficient_group(w.n)
    if group is ChiGroup.TRIVIAL:
        if w.chi:
            out.append(Finding(
                "chi-unexpected", f"chi must be absent: KO~(S^{w.n}) = 0"))
    elif w.chi is None:
        out.append(Finding("chi-missing", f"chi is required when n = {w.n}"))
    elif len(w.chi) != w.k:
        out.append(Finding("chi-length", f"chi must have {w.k} entries, got {len(w.chi)}"))
    return out


def validate(w: WallInvariants) -> ValidationReport:
    """Check every structural invariant, then the integrality consequences."""
    violations = _structural(w)
    warnings: list[Finding] = []
    if violations:
        return ValidationReport(tuple(violations), ())

    if w.n % 2 == 0:
        tau = signature(w)
        if all(w.gram[i][i] % 2 == 0 for i in range(w.k)) and tau % 8:
            warnings.append(Finding(
                "even-form-signature",
                f"classical diagnostic: an even unimodular form has signature = 0 mod 8, got {tau}",
            ))

    from . import charnum, decision  # circular at import time

    if w.n % 4 == 0:
        p_half = charnum.pontrjagin_half(w)
        if p_half.denominator != 1:
            violations.append(Finding(
                "p-half-not-integral", f"p_{w.n // 2} = {p_half} is not an integer"))
        for code, label, value in (
            ("a-hat-not-integral", "A-hat", charnum.a_hat(w)),
            ("a-hat-c-not-integral", "A-hat_C", charnum.a_hat_C(w)),
        ):
            if value.denominator != 1:
                violations.append(Finding(code, f"{label} = {value} is not an integer"))
        q = decision.stable_quantity(w)
        if q.denominator % 2 == 0:
            violations.append(Finding(
                "stable-quantity-not-2-adic",
                f"stable congruence quantity {q} is not a 2-adic integer",
            ))
    return ValidationReport(tuple(violations), tuple(warnings))
