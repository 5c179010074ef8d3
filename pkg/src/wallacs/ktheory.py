"""Reduced K-groups of spheres and of M, with the real reduction map.

Pure table lookup by residue mod 8. Generator names are ASCII:
``omegaC``/``omegaR`` on spheres, ``xi``, ``eta<j>``, ``gamma``, ``zeta<j>``
on M. An order of ``None`` means an infinite cyclic summand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .exact import DomainError

__all__ = ["GroupPresentation", "KRow", "manifold_row", "sphere_row"]


@dataclass(frozen=True)
class GroupPresentation:
    summands: tuple[tuple[str, Optional[int]], ...] = ()

    def __post_init__(self):
        names = [g for g, _ in self.summands]
        if len(set(names)) != len(names):
            raise DomainError("generator names must be unique")

    def order(self, name: str) -> Optional[int]:
        return dict(self.summands)[name]

    @property
    def rank(self) -> int:
        return sum(1 for _, o in self.summands if o is None)

    def is_zero(self) -> bool:
        return not self.summands

    def render(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"{'Z' if o is None else f'Z{o}'}<{g}>" for g, o in self.summands)


@dataclass(frozen=True)
class KRow:
    """Complex group, real group and the images of the complex generators.

    ``reduction`` maps each complex generator to ``{real generator: coeff}``;
    generators missing from it map to 0.
    """

    complex: GroupPresentation
    real: GroupPresentation
    reduction: dict[str, dict[str, int]] = field(default_factory=dict)

    def image(self, source: str) -> dict[str, int]:
        return dict(self.reduction.get(source, {}))

    def render_reduction(self) -> str:
        rules = []
        for src, img in self.reduction.items():
            rhs = " + ".join((f"{c}*{g}" if c != 1 else g) for g, c in img.items()) or "0"
            rules.append(f"r({src}) = {rhs}")
        return ", ".join(rules) if rules else "r = 0"


def _reduce(real: GroupPresentation, rules: dict[str, dict[str, int]]) -> dict[str, dict[str, int]]:
    out = {}
    for src, img in rules.items():
        kept = {}
        for g, c in img.items():
            o = real.order(g)
            c = c % o if o is not None else c
            if c:
                kept[g] = c
        if kept:
            out[src] = kept
    return out


Z, Z2 = None, 2

# m mod 8 -> (K~(S^m), KO~(S^m), coefficient of omegaR in r(omegaC))
_SPHERE_TABLE = {
    0: (Z, Z, 2),
    1: ("0", Z2, 0),
    2: (Z, Z2, 1),
    4: (Z, Z, 1),
    6: (Z, "0", 0),
    3: ("0", "0", 0),
    5: ("0", "0", 0),
    7: ("0", "0", 0),
}


def sphere_row(m: int) -> KRow:
    if m < 1:
        raise DomainError("sphere dimension must be positive")
    c, r, coeff = _SPHERE_TABLE[m % 8]
    kc = GroupPresentation(() if c == "0" else (("omegaC", c),))
    kr = GroupPresentation(() if r == "0" else (("omegaR", r),))
    rules = {"omegaC": {"omegaR": coeff}} if coeff else {}
    return KRow(kc, kr, _reduce(kr, rules))


# n mod 8 -> (eta present, gamma order, zeta order, r(xi) coeff, r(eta_j) coeff on zeta_j)
_MANIFOLD_TABLE = {
    0: (True, Z, Z, 2, 2),
    1: (False, Z2, Z2, 1, 0),
    2: (True, Z, Z2, 1, 1),
    4: (True, Z, Z, 2, 1),
    5: (False, Z2, "0", 1, 0),
    6: (True, Z, "0", 1, 0),
    3: (False, "0", "0", 0, 0),
    7: (False, "0", "0", 0, 0),
}


def manifold_row(n: int, k: int) -> KRow:
    if n < 3 or k < 0:
        raise DomainError("need n >= 3 and k >= 0")
    eta, gamma, zeta, r_xi, r_eta = _MANIFOLD_TABLE[n % 8]
    complex_ = [("xi", Z)] + ([(f"eta{j}", Z) for j in range(1, k + 1)] if eta else [])
    real = [] if gamma == "0" else [("gamma", gamma)]
    if zeta != "0":
        real += [(f"zeta{j}", zeta) for j in range(1, k + 1)]
    kr = GroupPresentation(tuple(real))
    rules: dict[str, dict[str, int]] = {}
    if r_xi:
        rules["xi"] = {"gamma": r_xi}
    if eta and r_eta:
        for j in range(1, k + 1):
            rules[f"eta{j}"] = {f"zeta{j}": r_eta}
    return KRow(GroupPresentation(tuple(complex_)), kr, _reduce(kr, rules))
