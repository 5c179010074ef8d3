import random

import pytest

from wallacs import catalog
from wallacs.wall import WallInvariants


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def random_unimodular_pair(k, rng, steps=None):
    """Random ``U`` with det 1 together with its integer inverse."""
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    inv = [row[:] for row in u]
    for _ in range(steps if steps is not None else 2 * k):
        if k < 2:
            break
        i, j = rng.sample(range(k), 2)
        c = rng.choice([-1, 1])
        # U <- U E, E = I + c e_ij ; inverse <- E^-1 inverse
        for r in range(k):
            u[r][j] += c * u[r][i]
        for col in range(k):
            inv[i][col] -= c * inv[j][col]
    return u, inv


def random_diagonal_block(k, rng):
    """Direct sum of +-1 entries and hyperbolic planes."""
    g = [[0] * k for _ in range(k)]
    i = 0
    while i < k:
        if i + 1 < k and rng.random() < 0.3:
            g[i][i + 1] = g[i + 1][i] = 1
            i += 2
        else:
            g[i][i] = rng.choice([-1, 1])
            i += 1
    return g


def random_symmetric_unimodular(k, rng, max_entry=None, steps=None):
    while True:
        d = random_diagonal_block(k, rng)
        u, _ = random_unimodular_pair(k, rng, steps)
        a = matmul(transpose(u), matmul(d, u))
        if max_entry is None or all(abs(x) <= max_entry for row in a for x in row):
            return tuple(tuple(row) for row in a)


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture
def hp2():
    return catalog.get("hp2")


@pytest.fixture
def synthetic():
    return catalog.get("synthetic_n4_yes")


def system(n, gram, chi=None, name=None):
    gram = tuple(tuple(r) for r in gram)
    return WallInvariants(n=n, k=len(gram), gram=gram, chi=chi, name=name)


def random_valid_system(n, rng, extra=3):
    """Random valid system with n = 4 or 8 (mod 8 structure only matters).

    A hyperbolic plane carries chi = (1, b) so ``I(chi, chi)`` can be tuned:
    n = 4 needs I(chi, chi) = tau (mod 224); n = 8 is valid at I(chi, chi) = tau.
    The result is moved to a random basis (chi transforms contravariantly).
    """
    signs = [rng.choice([-1, 1]) for _ in range(rng.randint(0, extra))]
    k = 2 + len(signs)
    g = [[0] * k for _ in range(k)]
    g[0][1] = g[1][0] = 1
    odd = [rng.choice([-3, -1, 1, 3]) for _ in signs]
    for i, s in enumerate(signs):
        g[2 + i][2 + i] = s
    tau = sum(signs)
    q_rest = sum(s * c * c for s, c in zip(signs, odd))
    shift = 224 * rng.randint(-2, 2) if n % 8 == 4 else 0
    b, rem = divmod(tau + shift - q_rest, 2)
    assert rem == 0
    chi = [1, b] + odd
    u, inv = random_unimodular_pair(k, rng, steps=2 * k)
    gram = matmul(transpose(u), matmul(g, u))
    chi2 = [sum(inv[i][j] * chi[j] for j in range(k)) for i in range(k)]
    return system(n, gram, tuple(chi2))


def inverse_diagonal(gram):
    """Diagonal of the inverse of a unimodular matrix (exact, via sympy)."""
    import sympy

    inv = sympy.Matrix(gram).inv()
    return [int(inv[i, i]) for i in range(len(gram))]


def enclosing_box(gram, target):
    """Every x with |x^T A x| = |c| on a definite A has |x_i|^2 <= |c| (|A|^-1)_ii."""
    import math

    if not gram:
        return 0
    return max(math.isqrt(abs(target) * abs(d)) + 1 for d in inverse_diagonal(gram))


def random_rep_problem(rng, max_k=4, max_entry=3, max_target=40, bound=3):
    from wallacs.quadrep import RepProblem

    k = rng.randint(0, max_k)
    gram = random_symmetric_unimodular(k, rng, max_entry=max_entry, steps=rng.randint(0, 3 * k))
    congruence = tuple(rng.randint(0, 1) for _ in range(k)) if rng.random() < 0.5 else None
    return RepProblem(gram, rng.randint(-max_target, max_target), congruence, bound)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
