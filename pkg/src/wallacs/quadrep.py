"""Representing an integer by a unimodular quadratic form, with a parity class.

Given a symmetric unimodular Gram matrix ``A``, a target ``c`` and an
optional vector ``v`` in ``{0,1}^k``, look for ``x`` in ``Z^k`` with
``x^T A x = c`` and ``x = v (mod 2)``.

Definite forms are searched completely (the solution set is finite).
Indefinite forms are searched in the box ``max|x_i| <= search_bound``
only, so a miss is reported as ``UNKNOWN_WITHIN_BOUND``, never as "no".

Witnesses are canonical: smallest max-norm first, then lexicographic with
coordinates ordered ``0, 1, -1, 2, -2, ...``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .exact import DomainError
from .wall import congruence_diagonal, determinant

__all__ = [
    "DEFAULT_SEARCH_BOUND",
    "FormType",
    "Obstruction",
    "RepOutcome",
    "RepProblem",
    "RepStatus",
    "SearchTooLargeError",
    "brute_force_oracle",
    "canonical_key",
    "classify_form",
    "quick_obstructions",
    "solve",
]

DEFAULT_SEARCH_BOUND = 32
ORACLE_POINT_LIMIT = 10**7
SINGLE_PASS_LIMIT = 10**6
SHELL_BUDGET = 2 * 10**6


class SearchTooLargeError(RuntimeError):
    pass


class FormType(str, enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    INDEFINITE = "Indefinite"


class Obstruction(str, enum.Enum):
    PARITY = "ParityObstruction"
    MOD4 = "Mod4Obstruction"
    SIGN = "SignObstruction"


class RepStatus(str, enum.Enum):
    FOUND = "Found"
    NONE_EXHAUSTIVE = "NoneExhaustive"
    NONE_OBSTRUCTION = "NoneObstruction"
    UNKNOWN_WITHIN_BOUND = "UnknownWithinBound"


Vector = tuple[int, ...]


@dataclass(frozen=True)
class RepProblem:
    gram: tuple[tuple[int, ...], ...]
    target: int
    congruence: Optional[Vector] = None
    search_bound: int = DEFAULT_SEARCH_BOUND

    def __post_init__(self):
        g = tuple(tuple(int(a) for a in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        k = len(g)
        if any(len(row) != k for row in g):
            raise DomainError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(k) for j in range(i)):
            raise DomainError("Gram matrix must be symmetric")
        if abs(determinant(g)) != 1:
            raise DomainError("Gram matrix must be unimodular")
        if self.congruence is not None:
            v = tuple(int(x) for x in self.congruence)
            if len(v) != k or any(x not in (0, 1) for x in v):
                raise DomainError("congruence must be a 0/1 vector of length k")
            object.__setattr__(self, "congruence", v)
        if self.search_bound < 1:
            raise DomainError("search_bound must be positive")

    @property
    def k(self) -> int:
        return len(self.gram)

    def value(self, x: Sequence[int]) -> int:
        return _qf(self.gram, x)

    def accepts(self, x: Sequence[int]) -> bool:
        if len(x) != self.k or self.value(x) != self.target:
            return False
        v = self.congruence
        return v is None or all((a - b) % 2 == 0 for a, b in zip(x, v))


@dataclass(frozen=True)
class RepOutcome:
    status: RepStatus
    witness: Optional[Vector] = None
    obstruction: Optional[Obstruction] = None
    bound_used: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.status is RepStatus.FOUND

    @property
    def impossible(self) -> bool:
        return self.status in (RepStatus.NONE_EXHAUSTIVE, RepStatus.NONE_OBSTRUCTION)


def _qf(gram: Sequence[Sequence[int]], x: Sequence[int]) -> int:
    return sum(xi * gij * xj for xi, row in zip(x, gram) for gij, xj in zip(row, x))


def _coord_key(t: int) -> int:
    # 0, 1, -1, 2, -2, ... -> 0, 1, 2, 3, 4, ...
    return 2 * t - 1 if t > 0 else -2 * t


def canonical_key(x: Sequence[int]) -> tuple:
    return (max((abs(t) for t in x), default=0), tuple(_coord_key(t) for t in x))


def classify_form(gram: Sequence[Sequence[int]]) -> FormType:
    d = congruence_diagonal(gram)
    if any(t == 0 for t in d):
        raise DomainError("degenerate form")
    if all(t > 0 for t in d):
        return FormType.POSITIVE_DEFINITE
    if all(t < 0 for t in d):
        return FormType.NEGATIVE_DEFINITE
    return FormType.INDEFINITE


def quick_obstructions(p: RepProblem) -> Optional[Obstruction]:
    g, c = p.gram, p.target
    if all(g[i][i] % 2 == 0 for i in range(p.k)) and c % 2:
        return Obstruction.PARITY
    if p.congruence is not None and (c - p.value(p.congruence)) % 4:
        return Obstruction.MOD4
    if c != 0 and p.k:
        kind = classify_form(g)
        if (kind is FormType.POSITIVE_DEFINITE and c < 0) or (
            kind is FormType.NEGATIVE_DEFINITE and c > 0
        ):
            return Obstruction.SIGN
    return None


def _ldl(gram: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """``A = L D L^T`` for positive definite ``A``; ``mu[i][j] = L[j][i]``, j > i."""
    k = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    d: list[Fraction] = [Fraction(0)] * k
    L = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for j in range(k):
        d[j] = a[j][j] - sum(L[j][t] ** 2 * d[t] for t in range(j))
        for i in range(j + 1, k):
            L[i][j] = (a[i][j] - sum(L[i][t] * L[j][t] * d[t] for t in range(j))) / d[j]
    mu = [[L[j][i] for j in range(k)] for i in range(k)]
    return d, mu


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ellipsoid_points(gram: Sequence[Sequence[int]], c: int) -> Iterator[Vector]:
    """All ``x`` with ``x^T A x = c`` for positive definite ``A`` (Fincke-Pohst).

    With ``A = L D L^T`` we have ``x^T A x = sum_i d_i (x_i + s_i)^2`` where
    ``s_i = sum_{j>i} mu_ij x_j``; coordinates are fixed from last to first.
    """
    k = len(gram)
    d, mu = _ldl(gram)
    x = [0] * k

    def rec(i: int, remaining: Fraction) -> Iterator[Vector]:
        if i < 0:
            if remaining == 0:
                yield tuple(x)
            return
        s = sum((mu[i][j] * x[j] for j in range(i + 1, k)), Fraction(0))
        bound_sq = remaining / d[i]
        r = math.isqrt(_floor(bound_sq)) + 1  # r >= sqrt(bound_sq)
        for t in range(_ceil(-s - r), _floor(-s + r) + 1):
            used = d[i] * (t + s) ** 2
            if used <= remaining:
                x[i] = t
                yield from rec(i - 1, remaining - used)
        x[i] = 0

    yield from rec(k - 1, Fraction(c))


def _best(candidates: Iterable[Vector]) -> Optional[Vector]:
    return min(candidates, key=canonical_key, default=None)


def _solve_definite(p: RepProblem, sign: int) -> RepOutcome:
    gram = [[sign * a for a in row] for row in p.gram]
    hits = (x for x in _ellipsoid_points(gram, sign * p.target) if p.accepts(x))
    w = _best(hits)
    if w is None:
        return RepOutcome(RepStatus.NONE_EXHAUSTIVE)
    return RepOutcome(RepStatus.FOUND, witness=w)


def _last_coordinate_roots(a: int, b: int, r: int) -> list[int]:
    """Integer ``t`` with ``a t^2 + 2 b t + r = 0``."""
    if a == 0:
        if b == 0:
            # every t works; the two cheapest of each parity
            return [0, 1] if r == 0 else []
        return [-r // (2 * b)] if r % (2 * b) == 0 else []
    disc = b * b - a * r
    if disc < 0:
        return []
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    return [t // a for t in {-b + s, -b - s} if t % a == 0]


def _axis(bound: int, parity: Optional[int]) -> list[int]:
    """Coordinates with ``|t| <= bound`` in canonical order, optionally one parity."""
    ts = sorted(range(-bound, bound + 1), key=_coord_key)
    return ts if parity is None else [t for t in ts if (t - parity) % 2 == 0]


def _box_size(k: int, bound: int, congruence: Optional[Vector]) -> int:
    per_axis = 2 * bound + 1 if congruence is None else bound + 1
    return per_axis ** max(k - 1, 0)


def _solve_box(p: RepProblem, bound: int) -> Optional[Vector]:
    """Canonical solution inside the box, solving exactly for the last coordinate."""
    k, g, v = p.k, p.gram, p.congruence
    if k == 0:
        return () if p.target == 0 else None
    a = g[-1][-1]
    head = [row[:-1] for row in g[:-1]]
    best: Optional[Vector] = None
    best_key = None
    axes = [_axis(bound, None if v is None else v[i]) for i in range(k - 1)]
    for prefix in itertools.product(*axes):
        b = sum(g[-1][j] * prefix[j] for j in range(k - 1))
        r = _qf(head, prefix) - p.target
        for t in _last_coordinate_roots(a, b, r):
            if abs(t) > bound or (v is not None and (t - v[-1]) % 2):
                continue
            x = prefix + (t,)
            key = canonical_key(x)
            if best_key is None or key < best_key:
                best, best_key = x, key
    return best


class _BudgetExhausted(Exception):
    pass


def _search_shells(p: RepProblem, bound: int, budget: int) -> tuple[Optional[Vector], int]:
    """Depth-first search of the shells ``max|x_i| = m``, m = 0, 1, ..., bound.

    Coordinates are tried in canonical order, so the first hit is the
    canonical witness. Returns ``(witness, last fully searched radius)``;
    the radius is -1 when even the origin shell ran out of budget.
    """
    k, g, v = p.k, p.gram, p.congruence
    a = g[-1][-1]
    steps = 0

    for m in range(bound + 1):
        axes = [_axis(m, None if v is None else v[i]) for i in range(k)]
        last = set(axes[-1])
        lin = [0] * k  # lin[i] = sum_j g[i][j] x_j over assigned j
        x = [0] * k

        def dfs(i: int, value: int, reached: bool) -> Optional[Vector]:
            nonlocal steps
            steps += 1
            if steps > budget:
                raise _BudgetExhausted
            if i == k - 1:
                roots = [
                    t for t in _last_coordinate_roots(a, lin[-1], value - p.target)
                    if t in last and (reached or abs(t) == m)
                ]
                if not roots:
                    return None
                return tuple(x[:-1]) + (min(roots, key=_coord_key),)
            for t in axes[i]:
                x[i] = t
                if t:
                    for j in range(i + 1, k):
                        lin[j] += g[j][i] * t
                found = dfs(i + 1, value + g[i][i] * t * t + 2 * t * (lin[i]), reached or abs(t) == m)
                if t:
                    for j in range(i + 1, k):
                        lin[j] -= g[j][i] * t
                if found is not None:
                    return found
            x[i] = 0
            return None

        try:
            hit = dfs(0, 0, m == 0)
        except _BudgetExhausted:
            return None, m - 1
        if hit is not None:
            return hit, m
    return None, bound


def solve(p: RepProblem) -> RepOutcome:
    if p.k == 0:
        # the zero lattice represents only 0
        status = RepStatus.FOUND if p.target == 0 else RepStatus.NONE_EXHAUSTIVE
        return RepOutcome(status, witness=() if p.target == 0 else None)
    obstruction = quick_obstructions(p)
    if obstruction is not None:
        return RepOutcome(RepStatus.NONE_OBSTRUCTION, obstruction=obstruction)
    kind = classify_form(p.gram)
    if kind is FormType.POSITIVE_DEFINITE:
        out = _solve_definite(p, 1)
    elif kind is FormType.NEGATIVE_DEFINITE:
        out = _solve_definite(p, -1)
    else:
        if _box_size(p.k, p.search_bound, p.congruence) <= SINGLE_PASS_LIMIT:
            w, used = _solve_box(p, p.search_bound), p.search_bound
        else:
            w, used = _search_shells(p, p.search_bound, SHELL_BUDGET)
        if w is None:
            out = RepOutcome(RepStatus.UNKNOWN_WITHIN_BOUND, bound_used=used if used >= 0 else None)
        else:
            out = RepOutcome(RepStatus.FOUND, witness=w, bound_used=used)
    if out.found:
        assert p.accepts(out.witness), "solver returned an invalid witness"
    return out


def brute_force_oracle(p: RepProblem, box: int) -> RepOutcome:
    """Plain scan of every point of ``max|x_i| <= box``; reference for tests.

    Reports ``NONE_EXHAUSTIVE`` when nothing is found in the box, which
    is only a proof for definite forms whose solutions all fit inside it.
    """
    if box < 0:
        raise DomainError("box must be nonnegative")
    points = (2 * box + 1) ** p.k
    if p.k * points > ORACLE_POINT_LIMIT:
        raise SearchTooLargeError(f"{points} points in box {box} for k = {p.k}")
    if p.k == 0:
        hits: list[Vector] = [()] if p.target == 0 else []
    else:
        biggest = max(abs(a) for row in p.gram for a in row) * (p.k * box) ** 2
        if biggest < 2**62:
            axes = np.arange(-box, box + 1, dtype=np.int64)
            grid = np.stack(np.meshgrid(*([axes] * p.k), indexing="ij"), axis=-1).reshape(-1, p.k)
            values = np.einsum("pi,ij,pj->p", grid, np.array(p.gram, dtype=np.int64), grid)
            mask = values == p.target
            if p.congruence is not None:
                mask &= np.all((grid - np.array(p.congruence)) % 2 == 0, axis=1)
            hits = [tuple(int(t) for t in row) for row in grid[mask]]
        else:
            hits = [x for x in itertools.product(range(-box, box + 1), repeat=p.k) if p.accepts(x)]
    best = _best(hits)
    if best is None:
        return RepOutcome(RepStatus.NONE_EXHAUSTIVE, bound_used=box)
    return RepOutcome(RepStatus.FOUND, witness=best, bound_used=box)
