"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the package's own rank/recursion engines:
moebius by trial division, Betti numbers by numpy floating-point matrix rank,
Wu characteristic by literal pair enumeration (lives in cohomology already),
tuple counts by direct enumeration.
"""

from __future__ import annotations

import random

import numpy as np
import pytest

from primetop import FactorSieve, Graph, boundary_matrices
from primetop.graphs import complete_graph, components, cycle_graph


@pytest.fixture(scope="session")
def sieve():
    return FactorSieve(3000)


@pytest.fixture(scope="session")
def sieve10k():
    return FactorSieve(10**4)


def moebius_bruteforce(x: int) -> int:
    if x == 1:
        return 1
    k = 0
    m = x
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            k += 1
        p += 1
    if m > 1:
        k += 1
    return (-1) ** k


def distinct_primes_bruteforce(x: int) -> tuple[list[int], bool]:
    factors = []
    squarefree = True
    m, p = x, 2
    while p * p <= m:
        if m % p == 0:
            factors.append(p)
            m //= p
            if m % p == 0:
                squarefree = False
                while m % p == 0:
                    m //= p
        p += 1
    if m > 1:
        factors.append(m)
    return factors, squarefree


def betti_float_oracle(K) -> tuple[int, ...]:
    """Betti numbers via numpy matrix_rank on dense boundaries (small complexes)."""
    fv = K.f_vector
    if not fv:
        return ()
    chain = boundary_matrices(K)
    ranks = [0]
    for k in range(1, len(fv)):
        ranks.append(int(np.linalg.matrix_rank(chain.dense(k).astype(float))))
    ranks.append(0)
    return tuple(fv[k] - ranks[k] - ranks[k + 1] for k in range(len(fv)))


def random_connected_graphs(count: int, seed: int = 11, max_vertices: int = 7) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(2, max_vertices)
        vs = list(range(1, k + 1))
        edges = [(a, b) for a in vs for b in vs if a < b and rng.random() < 0.5]
        G = Graph(vs, edges)
        if len(components(G)) == 1:
            out.append(G)
    return out


@pytest.fixture(scope="session")
def small_corpus():
    """Named tiny graphs used across modules."""
    octahedron = Graph(
        range(1, 7),
        [(a, b) for a in range(1, 7) for b in range(1, 7) if a < b and (a, b) not in ((1, 2), (3, 4), (5, 6))],
    )
    wheel6 = Graph(range(1, 8), [(i, i % 6 + 1) for i in range(1, 7)] + [(i, 7) for i in range(1, 7)])
    return {
        "K1": complete_graph(1),
        "K2": complete_graph(2),
        "K3": complete_graph(3),
        "K4": complete_graph(4),
        "C4": cycle_graph(4),
        "C5": cycle_graph(5),
        "C6": cycle_graph(6),
        "octahedron": octahedron,
        "wheel6": wheel6,
    }
