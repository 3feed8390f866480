"""Random generators shared by the unit and acceptance suites."""
from __future__ import annotations

import random
from math import gcd

from hypothesis import strategies as st

from clusteralg.laurent import LaurentPolynomial
from clusteralg.linalg import determinant, permute
from clusteralg.poisson import PoissonMatrix
from clusteralg.quantum import QuantumTorusElement, VPoly
from clusteralg.seeds import ExchangeMatrix


def random_laurent(rng: random.Random, n: int, terms: int, lo: int = -2, hi: int = 2,
                   polynomial: bool = False) -> LaurentPolynomial:
    acc = {}
    for _ in range(terms):
        e = tuple(rng.randint(0 if polynomial else lo, hi) for _ in range(n))
        acc[e] = rng.choice([-3, -2, -1, 1, 2, 3])
    return LaurentPolynomial(acc, n)


def random_distinct_laurent(rng: random.Random, n: int, terms: int, lo: int = -2,
                            hi: int = 2) -> LaurentPolynomial:
    acc = {}
    while len(acc) < terms:
        acc[tuple(rng.randint(lo, hi) for _ in range(n))] = rng.choice([-3, -2, -1, 1, 2, 3])
    return LaurentPolynomial(acc, n)


def random_skew_symmetrizable(rng: random.Random, m: int, n: int, bound: int = 3) -> ExchangeMatrix:
    """m x n, principal block skew-symmetrizable by a random D in {1,2,3}^m."""
    d = [rng.choice([1, 1, 2, 3]) for _ in range(m)]
    b = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            g = gcd(d[i], d[j])
            top = bound // max(d[i] // g, d[j] // g)
            s = rng.randint(-top, top)
            b[i][j] = s * d[i] // g
            b[j][i] = -s * d[j] // g
        for j in range(m, n):
            b[i][j] = rng.randint(-bound, bound)
    return ExchangeMatrix.from_rows(b)


def random_acyclic_full_rank(rng: random.Random, n: int, bound: int = 3,
                             shuffle: bool = True) -> ExchangeMatrix:
    """Skew-symmetric, acyclic after reordering, nonsingular; optionally shuffled."""
    while True:
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                b[i][j] = rng.randint(0, bound)
                b[j][i] = -b[i][j]
        if determinant(b) != 0:
            break
    if shuffle:
        perm = list(range(n))
        rng.shuffle(perm)
        b = [list(r) for r in permute(b, perm, perm)]
    return ExchangeMatrix.from_rows(b)


def random_skew(rng: random.Random, n: int, bound: int = 3, full_rank: bool = False) -> PoissonMatrix:
    while True:
        lam = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                lam[i][j] = rng.randint(-bound, bound)
                lam[j][i] = -lam[i][j]
        if not full_rank or determinant(lam) != 0:
            return PoissonMatrix(lam)


def random_quantum(rng: random.Random, lam: PoissonMatrix, terms: int, lo: int = -2,
                   hi: int = 2) -> QuantumTorusElement:
    acc = {}
    while len(acc) < terms:
        e = tuple(rng.randint(lo, hi) for _ in range(lam.n))
        acc[e] = VPoly({rng.randint(-2, 2): rng.choice([-2, -1, 1, 2])})
    return QuantumTorusElement(acc, lam)


# hypothesis strategies

def laurent_polys(n: int, max_terms: int = 5, lo: int = -2, hi: int = 2):
    exps = st.tuples(*[st.integers(lo, hi)] * n)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: LaurentPolynomial(d, n))


def skew_matrices(n: int, bound: int = 3):
    entries = st.lists(st.integers(-bound, bound), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2)

    def build(vals):
        lam = [[0] * n for _ in range(n)]
        it = iter(vals)
        for i in range(n):
            for j in range(i + 1, n):
                lam[i][j] = next(it)
                lam[j][i] = -lam[i][j]
        return PoissonMatrix(lam)

    return entries.map(build)


# acceptance lines collected during the run, printed by conftest at the end
ACCEPTANCE_LINES: list[str] = []
