"""Frobenius statistics of iterates: factor f, f∘f, ... modulo many primes.

For a good prime p the degrees of the irreducible factors of f^k mod p are
the cycle lengths of Frobenius acting on the roots, so tallying them over
primes estimates the distribution of leaf cycle types in the image of the
arboreal representation. Cycle types are ascending tuples throughout.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .arith import primes_up_to
from .errors import DomainError
from .poly import PolyRat, discriminant, factor_degrees_mod_p, iterate, reduce_mod
from .treegroup import (EXHAUSTIVE_CAP, cycle_type_distribution,
                        fixed_point_free_mass, total_variation, wreath_order)


@dataclass(frozen=True)
class FrobeniusSample:
    p: int
    level_types: tuple     # level j (1-based) -> ascending factor degrees of f^j mod p
    has_root_at: tuple

    def type_at(self, j: int) -> tuple:
        return self.level_types[j - 1]


@dataclass(frozen=True)
class DensityReport:
    p_max: int
    primes: int
    counts: tuple          # per level: primes where f^j has a root mod p
    estimates: tuple
    predictions: tuple     # None where no exhaustive prediction is available
    std_errors: tuple

    def within(self, sigmas: float = 3.0) -> list[bool | None]:
        out = []
        for est, pred, se in zip(self.estimates, self.predictions, self.std_errors):
            out.append(None if pred is None else abs(est - float(pred)) <= sigmas * se)
        return out


def _bad_part(f: PolyRat, k: int) -> tuple[int, int]:
    """(product of coefficient denominators and lc, discriminant numerator of f^k)."""
    den = f.lc.numerator
    for c in f.coeffs:
        den *= c.denominator
    disc = discriminant(iterate(f, k))
    return den, disc.numerator


def good_primes(f: PolyRat, k: int, p_max: int) -> Iterator[int]:
    """Primes p <= p_max where f is p-integral with unit leading coefficient
    and f^k stays separable mod p.

    disc(f^j) divides a power of disc(f^k) up to denominators, so one
    discriminant covers every level j <= k.
    """
    if f.degree < 1:
        raise DomainError("f must have degree >= 1")
    den, disc = _bad_part(f, k)
    if disc == 0:
        raise DomainError("f^k is not separable")
    for p in primes_up_to(p_max).tolist():
        if den % p and disc % p:
            yield p


def frobenius_sample(f: PolyRat, k: int, p: int) -> FrobeniusSample:
    fbar = reduce_mod(f, p)
    if fbar.degree != f.degree:
        raise DomainError(f"{p} divides the leading coefficient")
    types, roots = [], []
    g = fbar
    for j in range(1, k + 1):
        if j > 1:
            g = fbar(g)
        degs = tuple(sorted(factor_degrees_mod_p(g)))
        if sum(degs) != g.degree or g.gcd(g.derivative()).degree > 0:
            raise DomainError(f"f^{j} is not separable mod {p}")
        types.append(degs)
        roots.append(1 in degs)
    return FrobeniusSample(p, tuple(types), tuple(roots))


def tower_compatible(s: FrobeniusSample, n: int) -> bool:
    """Cycle lengths at level j are multiples of some level-(j-1) lengths,
    with each length-l cycle below receiving preimages summing to n*l.

    The level-j cycles are distributed among the level-(j-1) cycles by an
    exhaustive search over divisible placements.
    """
    prev = (1,)
    for j, cur in enumerate(s.level_types, start=1):
        if sum(cur) != n ** j:
            return False
        if not _distributable(list(prev), list(cur), n):
            return False
        prev = cur
    return True


def _distributable(below: list, above: list, n: int) -> bool:
    # exact search: assign each cycle above to a cycle below whose length divides it
    below = sorted(below, reverse=True)
    above = sorted(above, reverse=True)
    need = [n * l for l in below]

    def place(i: int) -> bool:
        if i == len(above):
            return all(x == 0 for x in need)
        seen = set()
        for b, l in enumerate(below):
            key = (l, need[b])
            if above[i] % l == 0 and need[b] >= above[i] and key not in seen:
                seen.add(key)
                need[b] -= above[i]
                if place(i + 1):
                    return True
                need[b] += above[i]
        return False

    return place(0)


def _sample_chunk(args) -> list[FrobeniusSample]:
    coeffs, k, primes = args
    f = PolyRat(coeffs)
    return [frobenius_sample(f, k, p) for p in primes]


def sample_primes(f: PolyRat, k: int, p_max: int, workers: int = 1,
                  chunk: int = 512) -> list[FrobeniusSample]:
    """Frobenius samples at every good prime up to ``p_max``, in prime order.

    With ``workers > 1`` the primes are split into chunks handled by a process
    pool; results are merged back in prime order so the output does not
    depend on scheduling.
    """
    primes = list(good_primes(f, k, p_max))
    if workers <= 1:
        return [frobenius_sample(f, k, p) for p in primes]
    jobs = [(f.coeffs, k, primes[i:i + chunk]) for i in range(0, len(primes), chunk)]
    out: list[FrobeniusSample] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sample_chunk, jobs):
            out.extend(part)
    return out


def _prediction(n: int, j: int):
    if wreath_order(n, j) > EXHAUSTIVE_CAP:
        return None
    return 1 - fixed_point_free_mass(cycle_type_distribution(n, j))


def density_from_samples(samples: list[FrobeniusSample], n: int, k: int,
                         p_max: int) -> DensityReport:
    m = len(samples)
    if m == 0:
        raise DomainError("no samples")
    counts, est, pred, se = [], [], [], []
    for j in range(1, k + 1):
        c = sum(s.has_root_at[j - 1] for s in samples)
        e = c / m
        counts.append(c)
        est.append(e)
        pred.append(_prediction(n, j))
        se.append(math.sqrt(e * (1 - e) / m))
    return DensityReport(p_max, m, tuple(counts), tuple(est), tuple(pred), tuple(se))


def root_density(f: PolyRat, k: int, p_max: int, workers: int = 1) -> DensityReport:
    samples = sample_primes(f, k, p_max, workers)
    return density_from_samples(samples, f.degree, k, p_max)


def empirical_distribution(samples: list[FrobeniusSample], k: int) -> dict:
    if not samples:
        raise DomainError("empty sample list")
    counts: dict = {}
    for s in samples:
        t = s.type_at(k)
        counts[t] = counts.get(t, 0) + 1
    return {t: c / len(samples) for t, c in sorted(counts.items())}


def compare_to_group(samples: list[FrobeniusSample], n: int, k: int) -> float:
    """Total variation between observed level-k cycle types and Aut(T_{n,k})."""
    if not samples:
        raise DomainError("empty sample list")
    group = cycle_type_distribution(n, k, "exhaustive")
    return total_variation(empirical_distribution(samples, k), group)
