"""Parameters (n, a, A) for the family X^a (X - A)^(n-a) + A and their checks.

The base field is modelled only through ``s_ram``, the finite set of primes
that ramify in it. Every check here is exact; no floating point is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .arith import (RationalLike, as_rational, factor, is_probable_prime,
                    pm_decompose, vp)
from .errors import DomainError

HYPOTHESES = ("A1", "A2", "A3", "A4", "A5", "A6", "A699", "A7")


@dataclass(frozen=True)
class OdoniParams:
    n: int
    a: int
    A: Fraction
    s_ram: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "A", as_rational(self.A))
        object.__setattr__(self, "s_ram", frozenset(int(p) for p in self.s_ram))
        if self.n < 2 or not 0 < self.a < self.n:
            raise DomainError(f"need n >= 2 and 0 < a < n, got n={self.n}, a={self.a}")
        if self.A == 0:
            raise DomainError("A must be nonzero")
        for p in self.s_ram:
            if not is_probable_prime(p):
                raise DomainError(f"s_ram entry {p} is not prime")

    @property
    def critical_point(self) -> Fraction:
        """The simple critical point aA/n."""
        return Fraction(self.a, self.n) * self.A


def _v2(m: int) -> int:
    return (m & -m).bit_length() - 1


def exponent_rule(n: int, a: int) -> str | None:
    """Which of the three exponent rules ``a`` satisfies for ``n``, if any.

    The rules are exclusive by construction: "a1" (n <= 6, a = 1), "a2"
    (n = 7 mod 8, a = 1) and "a3" (otherwise; n - a prime and a < n/2).
    """
    if n <= 6:
        return "a1" if a == 1 else None
    if n % 8 == 7:
        return "a2" if a == 1 else None
    if 0 < a and 2 * a < n and is_probable_prime(n - a):
        return "a3"
    return None


def choose_a(n: int) -> int:
    if n < 2:
        raise DomainError("choose_a needs n >= 2")
    if n <= 6 or n % 8 == 7:
        return 1
    for a in range(1, (n + 1) // 2):
        if 2 * a < n and is_probable_prime(n - a):
            return a
    raise AssertionError(f"no admissible a for n={n}")  # excluded by Bertrand


def a3_holds(n: int, a: int, A: Fraction) -> bool:
    """Exact form of the size hypothesis.

    ``A > 0`` and ``A**(n-1) * (a/n)**a * ((n-a)/n)**(n-a) > 2``, which is
    the stated real inequality raised to the power n - 1.
    """
    if A <= 0:
        return False
    return A ** (n - 1) * Fraction(a, n) ** a * Fraction(n - a, n) ** (n - a) > 2


@dataclass
class HypothesisReport:
    verdicts: dict
    p0: int | None = None
    pinf: int | None = None
    notes: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(self.verdicts[h] for h in HYPOTHESES)

    @property
    def first_failure(self) -> str | None:
        for h in HYPOTHESES:
            if not self.verdicts[h]:
                return h
        return None

    def to_json(self) -> dict:
        return {"valid": self.valid, "verdicts": dict(self.verdicts),
                "first_failure": self.first_failure, "p0": self.p0,
                "pinf": self.pinf, "notes": dict(self.notes)}


def _witness(m: int, admissible, budget: int) -> tuple[int | None, bool]:
    """Smallest admissible prime exactly dividing ``m``; flag if unfactored."""
    fac = factor(m, budget=budget)
    for p, e in fac.primes:
        if e == 1 and admissible(p):
            return p, fac.complete
    return None, fac.complete


def check_witnesses(params: OdoniParams, p0: int | None, pinf: int | None
                    ) -> tuple[bool, bool]:
    """Check recorded witness primes for the two existence hypotheses."""
    n, A, ram = params.n, params.A, params.s_ram
    ok0 = (p0 is not None and is_probable_prime(p0) and p0 not in ram
           and n % p0 != 0 and vp(A, p0) == 1)
    ok_inf = (pinf is not None and is_probable_prime(pinf) and pinf > n
              and pinf not in ram and vp(A, pinf) == -1)
    return ok0, ok_inf


def _local_verdicts(params: OdoniParams) -> dict:
    """The hypotheses that need no witness prime."""
    n, a, A = params.n, params.a, params.A
    plus, minus = pm_decompose(A)
    v2A = vp(A, 2)
    return {
        "A1": all(vp(A, p) > 0 for p in params.s_ram),
        "A3": a3_holds(n, a, A),
        "A4": (n - 1) * v2A >= 3 + n * _v2(n),
        "A5": math.gcd(plus, n) == 2 ** _v2(n),
        "A6": math.gcd(minus, a * (a - n)) == 1,
        "A7": n % 2 == 1 or minus % 8 not in (1, 7),
    }


def _ordered(verdicts: dict) -> dict:
    return {h: verdicts[h] for h in HYPOTHESES}


def check_hypotheses(params: OdoniParams, budget: int = 200_000) -> HypothesisReport:
    n, A, ram = params.n, params.A, params.s_ram
    plus, minus = pm_decompose(A)
    v = _local_verdicts(params)
    notes = {}

    p0, complete0 = _witness(plus, lambda p: p not in ram and n % p != 0, budget)
    v["A2"] = p0 is not None
    if p0 is None and not complete0:
        notes["A2"] = "numerator not fully factored within budget"

    pinf, complete_inf = _witness(abs(minus), lambda p: p > n and p not in ram, budget)
    v["A699"] = pinf is not None
    if pinf is None and not complete_inf:
        notes["A699"] = "denominator not fully factored within budget"

    return HypothesisReport(_ordered(v), p0, pinf, notes)


def check_hypotheses_with_witnesses(params: OdoniParams, p0: int | None,
                                    pinf: int | None) -> HypothesisReport:
    """Same verdicts as :func:`check_hypotheses`, taking p0 and pinf as given."""
    v = _local_verdicts(params)
    v["A2"], v["A699"] = check_witnesses(params, p0, pinf)
    return HypothesisReport(_ordered(v), p0 if v["A2"] else None,
                            pinf if v["A699"] else None)


def min_two_adic_exponent(n: int) -> int:
    """Least e with (n - 1) * e >= 3 + n * v2(n)."""
    return -(-(3 + n * _v2(n)) // (n - 1))


def search_A(n: int, a: int, s_ram: Iterable[int] = (), height_bound: int = 10 ** 6,
             count: int = 1) -> list[tuple[Fraction, HypothesisReport]]:
    """First ``count`` valid A in order of height max(A+, A-), then value.

    Only positive A of the admissible shape are enumerated: the numerator is
    a multiple of 2**e times the odd ramified primes (e forced by the 2-adic
    bound), it is coprime to the odd part of n, and the denominator is odd,
    coprime to a(a - n) and to the numerator. Each survivor is confirmed by
    :func:`check_hypotheses`.
    """
    ram = frozenset(s_ram)
    if exponent_rule(n, a) is None:
        raise DomainError(f"a={a} does not satisfy the exponent rule for n={n}")
    e = min_two_adic_exponent(n)
    base = 2 ** e
    for p in sorted(ram):
        if p != 2:
            base *= p
    odd_n = n >> _v2(n)
    bad_den = abs(a * (a - n))
    out: list[tuple[Fraction, HypothesisReport]] = []

    def admissible(num: int, den: int) -> bool:
        return (num % base == 0 and den % 2 == 1 and math.gcd(num, den) == 1
                and math.gcd(num, odd_n) == 1 and math.gcd(den, bad_den) == 1
                and (n % 2 == 1 or den % 8 not in (1, 7)))

    for h in range(1, height_bound + 1):
        cands = []
        if h % base == 0:
            cands += [(h, d) for d in range(1, h + 1)]
        cands += [(m, h) for m in range(base, h, base)]
        cands.sort(key=lambda nd: Fraction(*nd))
        for num, den in cands:
            if not admissible(num, den):
                continue
            A = Fraction(num, den)
            if not a3_holds(n, a, A):
                continue
            rep = check_hypotheses(OdoniParams(n, a, A, ram))
            if rep.valid:
                out.append((A, rep))
                if len(out) >= count:
                    return out
    return out


def perturb(A0: RationalLike, M: int, x: int) -> Fraction:
    """``((x + M) / x) * A0``."""
    if x < 1:
        raise DomainError("x must be a positive integer")
    return Fraction(x + M, x) * as_rational(A0)
