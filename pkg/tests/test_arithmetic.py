import pytest

from primetop import (
    FactorSieve,
    InvalidArgumentError,
    build_sieve,
    divisor_moebius_sum,
    kummer_number,
    mertens,
    moebius,
    pi_k,
    prime_pi,
    prime_signature,
    primorial,
)
from primetop.arithmetic import mertens_table, pi_k_tables

from conftest import distinct_primes_bruteforce, moebius_bruteforce


def test_build_sieve_examples():
    s = build_sieve(10)
    assert s.spf[9] == 3
    assert s.spf[7] == 7
    assert build_sieve(2).spf[2] == 2
    assert build_sieve(30).spf[30] == 2


def test_build_sieve_rejects_small_limit():
    with pytest.raises(InvalidArgumentError):
        build_sieve(1)


def test_sieve_invariants(sieve10k):
    spf = sieve10k.spf
    for x in range(2, 10**4 + 1):
        p = int(spf[x])
        assert x % p == 0
        assert spf[p] == p  # p is prime
        factors, _ = distinct_primes_bruteforce(x)
        assert p == min(factors)


def test_prime_signature_invariants(sieve):
    for x in range(2, 1200):
        sig = prime_signature(x, sieve)
        prod = 1
        for p in sig.factors:
            prod *= p
        assert x % prod == 0
        assert sig.squarefree == (prod == x)
        assert list(sig.factors) == sorted(set(sig.factors))
        ref_factors, ref_sqfree = distinct_primes_bruteforce(x)
        assert list(sig.factors) == ref_factors
        assert sig.squarefree == ref_sqfree
        assert sig.nu == len(ref_factors)


def test_moebius_examples(sieve):
    assert moebius(1, sieve) == 1
    assert moebius(30, sieve) == -1
    assert moebius(12, sieve) == 0


def test_moebius_matches_bruteforce(sieve10k):
    for x in range(1, 10**4 + 1):
        assert moebius(x, sieve10k) == moebius_bruteforce(x)


def test_moebius_range_check(sieve):
    with pytest.raises(InvalidArgumentError):
        moebius(0, sieve)
    with pytest.raises(InvalidArgumentError):
        moebius(sieve.limit + 1, sieve)


def test_mertens_examples(sieve):
    assert mertens(1, sieve) == 1
    assert mertens(2, sieve) == 0
    # direct summation oracle
    assert mertens(10, sieve) == sum(moebius_bruteforce(k) for k in range(1, 11)) == -1


def test_mertens_telescopes(sieve):
    for n in range(2, 400):
        assert mertens(n, sieve) - mertens(n - 1, sieve) == moebius(n, sieve)


def test_mertens_table_agrees(sieve):
    table = mertens_table(sieve, 300)
    for n in (1, 2, 10, 137, 300):
        assert table[n] == mertens(n, sieve)


def test_prime_pi_examples(sieve):
    assert prime_pi(10, sieve) == 4
    assert prime_pi(1.5, sieve) == 0
    assert prime_pi(2, sieve) == 1


def test_prime_pi_range(sieve):
    with pytest.raises(InvalidArgumentError):
        prime_pi(-1, sieve)
    with pytest.raises(InvalidArgumentError):
        prime_pi(sieve.limit + 1, sieve)


def test_pi_k_examples(sieve):
    # enumeration oracles: {6, 10}, {30}, {15}
    assert pi_k(2, 10, False, sieve) == 2
    assert pi_k(3, 30, False, sieve) == 1
    assert pi_k(2, 15, True, sieve) == 1
    assert pi_k(0, 100, False, sieve) == 0


def test_pi_k_bruteforce(sieve):
    for x in (10, 50, 211):
        for k in (1, 2, 3):
            for odd in (False, True):
                want = 0
                for m in range(2, x + 1):
                    factors, sqfree = distinct_primes_bruteforce(m)
                    if sqfree and len(factors) == k and (not odd or m % 2):
                        want += 1
                assert pi_k(k, x, odd, sieve) == want


def test_pi_k_equals_prime_pi(sieve):
    for x in (2, 10, 97, 500):
        assert pi_k(1, x, False, sieve) == prime_pi(x, sieve)


def test_pi_k_parity_recurrence(sieve10k):
    # pi_k(k, x, odd) = pi_k(k, x, all) - pi_{k-1}(x//2, odd): split on the factor 2
    n = 10**4
    tabs = pi_k_tables(sieve10k, n, 4)
    for k in (2, 3, 4):
        for x in range(2, n + 1):
            assert tabs[(k, True)][x] == tabs[(k, False)][x] - tabs[(k - 1, True)][x // 2]


def test_pi_k_tables_match_pi_k(sieve):
    tabs = pi_k_tables(sieve, 500, 3)
    for x in (2, 3, 100, 499, 500):
        for k in (1, 2, 3):
            for odd in (False, True):
                assert tabs[(k, odd)][x] == pi_k(k, x, odd, sieve)


def test_kummer_number():
    assert kummer_number(2) == 5
    assert kummer_number(3) == 29
    assert kummer_number(4) == 209
    assert primorial(5) == 2310
    with pytest.raises(InvalidArgumentError):
        kummer_number(0)
    with pytest.raises(OverflowError):
        kummer_number(16)


def test_divisor_moebius_sum_examples(sieve):
    assert divisor_moebius_sum(6, sieve) == -1  # mu(2)+mu(3)+mu(6)
    assert divisor_moebius_sum(4, sieve) == -1  # mu(2)+mu(4)
    assert divisor_moebius_sum(30, sieve) == -1


def test_divisor_moebius_sum_is_minus_one_everywhere(sieve):
    for n in range(2, 2001):
        assert divisor_moebius_sum(n, sieve) == -1
    with pytest.raises(InvalidArgumentError):
        divisor_moebius_sum(1, sieve)


def test_sieve_primes_listing():
    s = FactorSieve(50)
    assert list(s.primes) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
