"""Number-theoretic primitives: factor sieve, Moebius, Mertens, prime-tuple counts.

Everything is exact integer arithmetic.  The FactorSieve stores the smallest
prime factor of every integer up to a limit, which makes factorization of any
x <= limit an O(log x) division chain; all counting functions here sit on top
of that table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

DEFAULT_SIEVE_LIMIT = 10**6

# Enough primes for every primorial expressible in 64 bits (15 primes).
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)
_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class PrimeSignature:
    """Distinct prime factors of x in increasing order, plus squarefreeness."""

    x: int
    factors: tuple[int, ...]
    squarefree: bool

    @property
    def nu(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)


class FactorSieve:
    """Smallest-prime-factor table covering [2, limit]."""

    def __init__(self, limit: int):
        if limit < 2:
            raise InvalidArgumentError(f"sieve limit must be >= 2, got {limit}")
        self.limit = int(limit)
        spf = np.zeros(self.limit + 1, dtype=np.int64)
        for i in range(2, self.limit + 1):
            if spf[i] == 0:
                block = spf[i::i]
                block[block == 0] = i
        self.spf = spf
        self._primes: np.ndarray | None = None

    @property
    def primes(self) -> np.ndarray:
        """Sorted array of all primes <= limit."""
        if self._primes is None:
            idx = np.arange(self.limit + 1)
            self._primes = idx[(idx >= 2) & (self.spf == idx)]
        return self._primes

    def check_range(self, x: int) -> None:
        if not 1 <= x <= self.limit:
            raise InvalidArgumentError(f"{x} outside sieve range [1, {self.limit}]")

    def signature(self, x: int) -> PrimeSignature:
        """Factor x into its distinct primes via the spf chain."""
        self.check_range(x)
        factors = []
        squarefree = True
        m = x
        while m > 1:
            p = int(self.spf[m])
            factors.append(p)
            m //= p
            if m % p == 0:
                squarefree = False
                while m % p == 0:
                    m //= p
        return PrimeSignature(x=x, factors=tuple(factors), squarefree=squarefree)

    def is_squarefree(self, x: int) -> bool:
        return self.signature(x).squarefree


def build_sieve(limit: int = DEFAULT_SIEVE_LIMIT) -> FactorSieve:
    """Build a FactorSieve for [2, limit]."""
    return FactorSieve(limit)


def moebius(x: int, sieve: FactorSieve) -> int:
    """mu(x): (-1)^(number of distinct primes) on squarefree x, else 0; mu(1) = 1."""
    sieve.check_range(x)
    if x == 1:
        return 1
    sig = sieve.signature(x)
    if not sig.squarefree:
        return 0
    return -1 if sig.nu % 2 else 1


def mertens(n: int, sieve: FactorSieve) -> int:
    """M(n): partial sum of mu over 1..n."""
    sieve.check_range(n)
    return sum(moebius(k, sieve) for k in range(1, n + 1))


def mertens_table(sieve: FactorSieve, n: int) -> np.ndarray:
    """Array M[0..n] of Mertens values (M[0] = 0), for sweep-style consumers."""
    sieve.check_range(n)
    out = np.zeros(n + 1, dtype=np.int64)
    acc = 0
    for k in range(1, n + 1):
        acc += moebius(k, sieve)
        out[k] = acc
    return out


def prime_pi(x: float, sieve: FactorSieve) -> int:
    """pi(x): number of primes <= floor(x)."""
    if x < 0:
        raise InvalidArgumentError(f"prime_pi needs x >= 0, got {x}")
    if x > sieve.limit:
        raise InvalidArgumentError(f"{x} outside sieve range [0, {sieve.limit}]")
    fx = int(x)
    return int(np.searchsorted(sieve.primes, fx, side="right"))


def pi_k(k: int, x: float, odd_only: bool, sieve: FactorSieve) -> int:
    """Count squarefree m <= floor(x) with exactly k distinct prime factors.

    With odd_only, every factor must be odd (equivalently m is odd).  k = 0
    returns 0 by convention: the integer 1 never appears as a graph vertex.
    """
    if x < 0:
        raise InvalidArgumentError(f"pi_k needs x >= 0, got {x}")
    if x > sieve.limit:
        raise InvalidArgumentError(f"{x} outside sieve range [0, {sieve.limit}]")
    if k <= 0:
        return 0
    fx = int(x)
    count = 0
    for m in range(2, fx + 1):
        if odd_only and m % 2 == 0:
            continue
        sig = sieve.signature(m)
        if sig.squarefree and sig.nu == k:
            count += 1
    return count


def pi_k_tables(sieve: FactorSieve, n: int, k_max: int) -> dict[tuple[int, bool], np.ndarray]:
    """Cumulative pi_k arrays for all 1 <= k <= k_max and both parities.

    Returns {(k, odd_only): array A with A[x] = pi_k(k, x, odd_only)} for x in
    [0, n].  One pass over the sieve; intended for per-n sweeps where calling
    pi_k repeatedly would be quadratic.
    """
    sieve.check_range(n)
    tables = {(k, odd): np.zeros(n + 1, dtype=np.int64) for k in range(1, k_max + 1) for odd in (False, True)}
    for m in range(2, n + 1):
        sig = sieve.signature(m)
        if sig.squarefree and 1 <= sig.nu <= k_max:
            tables[(sig.nu, False)][m] = 1
            if m % 2 == 1:
                tables[(sig.nu, True)][m] = 1
    for arr in tables.values():
        np.cumsum(arr, out=arr)
    return tables


def kummer_number(d: int) -> int:
    """One less than the product of the first d primes."""
    if d < 1:
        raise InvalidArgumentError(f"kummer_number needs d >= 1, got {d}")
    if d > 15:
        raise OverflowError(f"primorial of {d} primes exceeds the 64-bit range")
    prod = 1
    for p in _SMALL_PRIMES[:d]:
        prod *= p
    if prod - 1 > _INT64_MAX:
        raise OverflowError(f"primorial of {d} primes exceeds the 64-bit range")
    return prod - 1


def primorial(d: int) -> int:
    """Product of the first d primes (the Kummer number plus one)."""
    return kummer_number(d) + 1


def divisor_moebius_sum(n: int, sieve: FactorSieve) -> int:
    """Sum of mu(d) over divisors d of n with d != 1; equals -1 for every n >= 2."""
    if n < 2:
        raise InvalidArgumentError(f"divisor_moebius_sum needs n >= 2, got {n}")
    sieve.check_range(n)
    divisors = [1]
    m = n
    while m > 1:
        p = int(sieve.spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        divisors = [d * p**j for d in divisors for j in range(e + 1)]
    return sum(moebius(d, sieve) for d in divisors if d != 1)


def prime_signature(x: int, sieve: FactorSieve) -> PrimeSignature:
    """Public wrapper around FactorSieve.signature."""
    return sieve.signature(x)
