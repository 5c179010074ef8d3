"""Built-in invariant systems with known answers."""
from __future__ import annotations

from .wall import ChiGroup, WallInvariants, chi_coefficient_group

__all__ = ["CATALOG", "catalog_names", "get", "product_spheres", "sphere"]


def _chi_zero(n: int, k: int):
    return None if chi_coefficient_group(n) is ChiGroup.TRIVIAL else (0,) * k


def sphere(n: int) -> WallInvariants:
    """S^{2n}: k = 0."""
    return WallInvariants(n=n, k=0, gram=(), chi=_chi_zero(n, 0), name=f"sphere{2 * n}")


def product_spheres(n: int) -> WallInvariants:
    """S^n x S^n: hyperbolic (n even) or standard skew (n odd) form, chi = 0."""
    gram = ((0, 1), (1, 0)) if n % 2 == 0 else ((0, 1), (-1, 0))
    return WallInvariants(n=n, k=2, gram=gram, chi=_chi_zero(n, 2), name=f"s{n}xs{n}")


def _build() -> dict[str, WallInvariants]:
    systems = [sphere(n) for n in range(3, 13)]
    systems += [product_spheres(n) for n in range(3, 13)]
    systems.append(WallInvariants(n=4, k=1, gram=((1,),), chi=(1,), name="hp2"))
    systems.append(WallInvariants(
        n=4, k=4,
        gram=((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, -1)),
        chi=(1, 1, 0, 0),
        name="synthetic_n4_yes",
    ))
    return {w.name: w for w in systems}


CATALOG: dict[str, WallInvariants] = _build()


def catalog_names() -> list[str]:
    return list(CATALOG)


def get(name: str) -> WallInvariants:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None
