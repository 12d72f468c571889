import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from odoni.arith import (INFINITY, factor, is_perfect_square, is_probable_prime,
                         pm_decompose, primes_up_to, vp)
from odoni.errors import DomainError


def test_pm_decompose_examples():
    assert pm_decompose(Fraction(52, 7)) == (52, 7)
    assert pm_decompose(Fraction(-37, 3)) == (37, -3)
    assert pm_decompose(5) == (5, 1)
    with pytest.raises(DomainError):
        pm_decompose(0)


@given(st.fractions().filter(lambda q: q != 0))
def test_pm_roundtrip(q):
    plus, minus = pm_decompose(q)
    assert plus > 0
    assert math.gcd(plus, minus) == 1
    assert Fraction(plus, minus) == q


def test_vp():
    assert vp(Fraction(52, 7), 13) == 1
    assert vp(Fraction(52, 7), 7) == -1
    assert vp(Fraction(52, 7), 2) == 2
    assert vp(0, 5) is INFINITY
    with pytest.raises(DomainError):
        vp(12, 4)


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6), st.sampled_from([2, 3, 5, 7, 11]))
def test_vp_is_additive(a, b, p):
    assert vp(Fraction(a) * b, p) == vp(a, p) + vp(b, p)
    assert vp(Fraction(a, b), p) == vp(a, p) - vp(b, p)


def test_primality_against_sympy():
    for n in range(-5, 3000):
        assert is_probable_prime(n) == sympy.isprime(n), n
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321,
              3825123056546413051):
        assert not is_probable_prime(n)
    assert is_probable_prime(2 ** 61 - 1)
    assert is_probable_prime(2 ** 127 - 1)
    assert not is_probable_prime((2 ** 61 - 1) * (2 ** 89 - 1))


def test_sieve():
    assert primes_up_to(1).tolist() == []
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10 ** 5)) == 9592


def test_factor_examples():
    f = factor(12139)
    assert f.primes == [(61, 1), (199, 1)] and f.complete
    assert factor(1).primes == [] and factor(1).complete
    assert factor(2 ** 10 * 3 ** 5).primes == [(2, 10), (3, 5)]
    assert factor(10 ** 12 + 39).primes == [(10 ** 12 + 39, 1)]
    big = 1000003 * 1000033 * 998244353
    assert factor(big).primes == [(1000003, 1), (1000033, 1), (998244353, 1)]
    with pytest.raises(DomainError):
        factor(0)


def test_factor_budget_exhaustion_is_not_an_error():
    # product of two ~20-digit primes: rho cannot split it in a tiny budget
    p, q = 10 ** 19 + 51, 10 ** 19 + 87
    assert is_probable_prime(p) and is_probable_prime(q)
    f = factor(6 * p * q, budget=100)
    assert f.primes == [(2, 1), (3, 1)]
    assert f.cofactor == p * q and not f.complete
    assert f.value() == 6 * p * q


@settings(max_examples=60)
@given(st.integers(1, 10 ** 15))
def test_factor_matches_sympy(m):
    f = factor(m)
    assert f.complete
    assert dict(f.primes) == sympy.factorint(m)


@given(st.integers(1, 10 ** 12))
def test_perfect_square(m):
    assert is_perfect_square(m * m)
    assert is_perfect_square(m) == (sympy.sqrt(m).is_integer)
