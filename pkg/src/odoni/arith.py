"""Exact integer and rational helpers.

Python's ``int`` and :class:`fractions.Fraction` carry the arithmetic; this
module adds the pieces number-theoretic code keeps needing: the plus/minus
split of a rational (sign kept on the denominator), p-adic valuations,
primality, square detection and a budgeted factorizer.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

from .errors import DomainError

INFINITY = math.inf

RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    return Fraction(x)


class PlusMinus(NamedTuple):
    """``alpha == plus / minus`` with ``plus > 0`` and the sign on ``minus``."""

    plus: int
    minus: int

    def value(self) -> Fraction:
        return Fraction(self.plus, self.minus)


def pm_decompose(alpha: RationalLike) -> PlusMinus:
    alpha = as_rational(alpha)
    if alpha == 0:
        raise DomainError("plus/minus decomposition of 0 is undefined")
    num, den = alpha.numerator, alpha.denominator
    if num < 0:
        return PlusMinus(-num, -den)
    return PlusMinus(num, den)


# -- primality -------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
# The first 13 prime bases are a proven deterministic witness set below this.
_DETERMINISTIC_LIMIT = 3317044064679887385961981
_EXTRA_ROUNDS = 24


def _miller_rabin(n: int, d: int, s: int, base: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below ~3.3e24, probabilistic above.

    The random bases used for large inputs come from a generator seeded by
    ``n`` itself, so the answer is reproducible.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _SMALL_PRIMES[:13]
    if not all(_miller_rabin(n, d, s, b) for b in bases):
        return False
    if n < _DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    return all(_miller_rabin(n, d, s, rng.randrange(2, n - 1))
               for _ in range(_EXTRA_ROUNDS))


def primes_up_to(limit: int) -> np.ndarray:
    """All primes ``<= limit`` by an Eratosthenes sieve."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if sieve[i]:
            sieve[i * i::2 * i] = False
    return np.flatnonzero(sieve)


# -- valuations ------------------------------------------------------------

def _int_valuation(m: int, p: int) -> int:
    m = abs(m)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def vp(alpha: RationalLike, p: int):
    """Exact p-adic valuation; ``vp(0, p)`` is ``INFINITY``."""
    if not is_probable_prime(p):
        raise DomainError(f"{p} is not prime")
    alpha = as_rational(alpha)
    if alpha == 0:
        return INFINITY
    return _int_valuation(alpha.numerator, p) - _int_valuation(alpha.denominator, p)


def is_perfect_square(m: int) -> bool:
    if m < 1:
        raise DomainError("is_perfect_square expects a positive integer")
    r = math.isqrt(m)
    return r * r == m


# -- factoring -------------------------------------------------------------

class Factorization(NamedTuple):
    """``prod(p**e for p, e in primes) * cofactor == m``.

    ``cofactor == 1`` exactly when the factorization is complete; otherwise
    it is the composite remainder the budget could not split.
    """

    primes: list
    cofactor: int

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.primes:
            out *= p ** e
        return out


def _brent(n: int, rng: random.Random, max_iter: int) -> tuple[int | None, int]:
    """One Pollard-Brent attempt. Returns (factor or None, iterations used)."""
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    batch = 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        j = 0
        while j < r and g == 1:
            ys = y
            for _ in range(min(batch, r - j)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            used += min(batch, r - j)
            g = math.gcd(q, n)
            j += batch
        r *= 2
        if used >= max_iter and g == 1:
            return None, used
    if g == n:
        # batch overshot; replay one step at a time
        while True:
            ys = (ys * ys + c) % n
            used += 1
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    if g == n:
        return None, used
    return g, used


def factor(m: int, budget: int = 200_000, trial_bound: int = 10_000,
           seed: int = 0) -> Factorization:
    """Factor ``m`` by trial division up to ``trial_bound`` then Pollard-rho.

    ``budget`` caps the total number of rho iterations. Running out of budget
    is not an error: whatever could not be split is returned as ``cofactor``.
    """
    if m < 1:
        raise DomainError("factor expects a positive integer")
    found: dict[int, int] = {}
    n = m
    for p in (2, 3, 5):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    d, step = 7, 4
    # 6k +- 1 wheel
    while d <= trial_bound and d * d <= n:
        while n % d == 0:
            found[d] = found.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1 and (d * d > n or is_probable_prime(n)):
        found[n] = found.get(n, 0) + 1
        n = 1

    rng = random.Random(seed)
    remaining = budget
    stuck = 1
    stack = [n] if n > 1 else []
    while stack:
        x = stack.pop()
        if is_probable_prime(x):
            found[x] = found.get(x, 0) + 1
            continue
        r = math.isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        g = None
        while g is None and remaining > 0:
            g, used = _brent(x, rng, remaining)
            remaining -= used
        if g is None:
            stuck *= x
            continue
        stack += [g, x // g]

    # a stuck composite may still share primes already found elsewhere
    for p in sorted(found):
        while stuck % p == 0:
            stuck //= p
            found[p] += 1
    return Factorization(sorted(found.items()), stuck)
