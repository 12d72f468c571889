"""Local certificates for f(X) = X^a (X - A)^(n-a) + A.

Each certificate is a small immutable record that a third party can check
from the recorded witnesses alone:

* Eisenstein at p0: every iterate is Eisenstein, hence irreducible and
  tamely, totally ramified there.
* Tame behaviour at pinf: valuation-space Newton polygons showing an
  (n-a)-branching subtree on which inertia acts transitively.
* Transpositions at pk: the critical value c_k has a prime of odd valuation,
  and modulo that prime the k-th iterate has exactly one double root whose
  lifted quadratic factor is ramified.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import (INFINITY, factor, is_perfect_square, is_probable_prime,
                    pm_decompose, vp)
from .errors import BadReduction, DomainError
from .newton import newton_polygon, polygon_from_points, is_eisenstein
from .params import OdoniParams, check_hypotheses, _v2
from .poly import (PolyFp, PolyMod, PolyRat, X, discriminant_over_qt,
                   factor_mod_p, hensel_pair_lift, iterate_mod, reduce_mod)


def build_poly(params: OdoniParams) -> PolyRat:
    n, a, A = params.n, params.a, params.A
    return X ** a * (X - A) ** (n - a) + A


# -- Eisenstein at p0 ------------------------------------------------------

@dataclass(frozen=True)
class EisensteinCert:
    p0: int | None
    k_max: int
    verified: tuple
    reason: str | None = None

    @property
    def valid(self) -> bool:
        return self.reason is None and len(self.verified) == self.k_max and all(self.verified)


def certify_eisenstein(params: OdoniParams, k_max: int, p0: int | None = None
                       ) -> EisensteinCert:
    """Check f = X^n mod p0 and that f, f∘f, ... up to depth k_max are Eisenstein.

    ``p0`` defaults to the witness found by :func:`check_hypotheses`.
    """
    if p0 is None:
        rep = check_hypotheses(params)
        if rep.p0 is None:
            return EisensteinCert(None, k_max, (), "no prime witnesses A2")
        p0 = rep.p0
    if not is_probable_prime(p0):
        return EisensteinCert(p0, k_max, (), f"{p0} is not prime")
    f = build_poly(params)
    try:
        fbar = reduce_mod(f, p0)
    except BadReduction as exc:
        return EisensteinCert(p0, k_max, (), f"reduction failed: {exc}")
    if fbar != PolyFp(p0, [0] * params.n + [1]):
        return EisensteinCert(p0, k_max, (), f"f is not X^{params.n} mod {p0}")
    verified = []
    g = X
    for _ in range(k_max):
        g = f(g)
        verified.append(is_eisenstein(g, p0))
    reason = None if all(verified) else "iterate not Eisenstein"
    return EisensteinCert(p0, k_max, tuple(verified), reason)


# -- critical orbit --------------------------------------------------------

@dataclass(frozen=True)
class OrbitRecord:
    k: int
    c_k: Fraction
    ck_plus: int
    ck_minus: int
    v2_of_ck_minus_1: int
    denominator_check: bool
    gcd_check: bool
    square_check: bool
    growth_check: bool
    evaluation_check: bool | None = None

    @property
    def checks(self) -> dict:
        out = {"denominator": self.denominator_check,
               "two_adic": self.v2_of_ck_minus_1 >= 3,
               "gcd": self.gcd_check,
               "nonsquare": self.square_check,
               "growth": self.growth_check}
        if self.evaluation_check is not None:
            out["evaluation"] = self.evaluation_check
        return out


@dataclass(frozen=True)
class CriticalOrbit:
    params: OdoniParams
    c0: Fraction
    records: tuple

    @property
    def failure(self) -> str | None:
        """``"k=<k>:<identity>"`` for the first failed identity, else None."""
        prev_v2 = None
        for r in self.records:
            for name, ok in r.checks.items():
                if not ok:
                    return f"k={r.k}:{name}"
            if prev_v2 is not None and r.v2_of_ck_minus_1 < prev_v2:
                return f"k={r.k}:two_adic_monotone"
            prev_v2 = r.v2_of_ck_minus_1
        return None

    @property
    def valid(self) -> bool:
        return self.failure is None

    def __getitem__(self, k: int) -> OrbitRecord:
        return self.records[k - 1]


def denominator_closed_form(params: OdoniParams, k: int) -> int:
    """(A^-)^(n^k - 1) * n2^(n^k) * (-1)^((n-a) n^(k-1)), n2 the odd part of n."""
    n, a = params.n, params.a
    minus = pm_decompose(params.A).minus
    n2 = n >> _v2(n)
    nk = n ** k
    sign = -1 if ((n - a) * n ** (k - 1)) % 2 else 1
    return sign * minus ** (nk - 1) * n2 ** nk


def critical_orbit(params: OdoniParams, k: int, evaluate_up_to: int = 3
                   ) -> CriticalOrbit:
    """c_j = f^j(aA/n) / A for j = 1..k via c_j = A^(n-1) c^a (c-1)^(n-a) + 1.

    For j <= ``evaluate_up_to`` the value A*c_j is also compared with f
    applied j times to aA/n.
    """
    if k < 1:
        raise DomainError("critical_orbit needs k >= 1")
    n, a, A = params.n, params.a, params.A
    plus, minus = pm_decompose(A)
    guard = n * abs(minus) * plus
    f = build_poly(params)
    c = Fraction(a, n)
    c0 = c
    x = params.critical_point
    records = []
    for j in range(1, k + 1):
        c = A ** (n - 1) * c ** a * (c - 1) ** (n - a) + 1
        cp, cm = pm_decompose(c)
        ev = None
        if j <= evaluate_up_to:
            x = f(x)
            ev = x == A * c
        records.append(OrbitRecord(
            k=j, c_k=c, ck_plus=cp, ck_minus=cm,
            v2_of_ck_minus_1=vp(c - 1, 2),
            denominator_check=cm == denominator_closed_form(params, j),
            gcd_check=math.gcd(cp, guard) == 1,
            square_check=not is_perfect_square(cp),
            growth_check=abs(c - 1) > 2,
            evaluation_check=ev))
    return CriticalOrbit(params, c0, tuple(records))


# -- odd-valuation prime ---------------------------------------------------

@dataclass(frozen=True)
class NonSquareWitness:
    """A prime q for which c_k^+ is a quadratic non-residue.

    This proves c_k^+ is not a square, so some prime divides it to odd
    order, without exhibiting that prime.
    """

    k: int
    q: int


def _legendre(x: int, q: int) -> int:
    t = pow(x % q, (q - 1) // 2, q)
    return -1 if t == q - 1 else t


def nonsquare_witness(m: int, k: int) -> NonSquareWitness:
    if is_perfect_square(m):
        raise DomainError("a perfect square has no non-residue witness")
    q = 3
    while True:
        if is_probable_prime(q) and _legendre(m, q) == -1:
            return NonSquareWitness(k, q)
        q += 2


def check_nonsquare_witness(m: int, w: NonSquareWitness) -> bool:
    return w.q > 2 and is_probable_prime(w.q) and _legendre(m, w.q) == -1


def find_pk(params: OdoniParams, k: int, budget: int = 200_000,
            orbit: CriticalOrbit | None = None) -> int | NonSquareWitness:
    """Smallest prime dividing c_k^+ to odd order, within the factoring budget.

    With a complete factorization the smallest such prime is returned. If the
    budget runs out, the smallest odd-order prime among those already split
    off is still a valid witness and is returned; otherwise a
    :class:`NonSquareWitness` stands in. ``budget <= 0`` skips factoring.
    """
    orbit = orbit if orbit is not None and len(orbit.records) >= k else critical_orbit(params, k)
    cp = orbit[k].ck_plus
    if budget > 0:
        fac = factor(cp, budget=budget)
        odd = [p for p, e in fac.primes if e % 2 == 1]
        if odd:
            return odd[0]
    return nonsquare_witness(cp, k)


# -- transpositions --------------------------------------------------------

@dataclass(frozen=True)
class TranspositionCert:
    k: int
    pk: int
    stage: str | None               # first failing stage, None if valid
    double_root: int | None = None
    simple_roots: tuple = ()
    simple_part_degree: int | None = None
    critical_valuation: int | None = None
    precision: int | None = None
    lifted_quadratic: tuple = ()    # shifted B(X + aA/n) mod pk^precision
    lifted_quadratic_slope: Fraction | None = None
    detail: str | None = None

    @property
    def valid(self) -> bool:
        return self.stage is None


def _capped_valuation(x: int, p: int, m: int):
    """Valuation of a residue known modulo p**m; at least m when x == 0."""
    x %= p ** m
    if x == 0:
        return m
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def verify_transposition(params: OdoniParams, k: int, pk: int,
                         precision: int | None = None,
                         rng: random.Random | None = None) -> TranspositionCert:
    """Check that inertia at ``pk`` acts on the roots of f^k as a transposition.

    Stage "i": modulo pk the iterate is (X - aA/n)^2 times a squarefree
    cofactor prime to it. Stage "ii": that pair Hensel-lifts modulo
    pk**precision (default v + 1, v the valuation of the critical value).
    Stage "iii": the lifted quadratic, recentred at aA/n, has a single Newton
    segment whose root valuation v/2 is not an integer.
    """
    n, a, A = params.n, params.a, params.A
    plus, minus = pm_decompose(A)
    if not is_probable_prime(pk):
        raise DomainError(f"{pk} is not prime")
    if (n * minus * plus) % pk == 0:
        raise DomainError(f"{pk} divides n*A^-*A^+")
    rng = rng if rng is not None else random.Random(0)
    f = build_poly(params)
    crit_value = A * critical_orbit(params, k, evaluate_up_to=0)[k].c_k
    v = vp(crit_value, pk)

    fbar = iterate_mod(reduce_mod(f, pk), k)
    r = params.critical_point.numerator * pow(params.critical_point.denominator, -1, pk) % pk
    fac = factor_mod_p(fbar, rng)
    multiple = [(g, e) for g, e in fac.factors if e > 1]
    target = PolyFp(pk, [-r, 1])
    if multiple != [(target, 2)]:
        return TranspositionCert(k, pk, "i", double_root=r, critical_valuation=v,
                                 detail=f"repeated factors {[(str(g), e) for g, e in multiple]}")
    simple = [g for g, e in fac.factors if e == 1]
    gbar = PolyFp(pk, [1])
    for g in simple:
        gbar = gbar * g
    bbar = target * target
    simple_roots = tuple(sorted(-g.coeffs[0] % pk for g in simple if g.degree == 1))

    m = precision if precision is not None else v + 1
    mod = pk ** m
    fm = iterate_mod(reduce_mod(f, pk, m) if m > 1 else reduce_mod(f, pk), k)
    fm = PolyMod(mod, fm.coeffs)
    try:
        B, G = hensel_pair_lift(fm, pk, (bbar, gbar), m)
    except DomainError as exc:
        return TranspositionCert(k, pk, "ii", double_root=r, simple_roots=simple_roots,
                                 simple_part_degree=gbar.degree, critical_valuation=v,
                                 precision=m, detail=str(exc))
    if B * G != fm:
        return TranspositionCert(k, pk, "ii", double_root=r, simple_roots=simple_roots,
                                 simple_part_degree=gbar.degree, critical_valuation=v,
                                 precision=m, detail="lifted product differs from f^k")

    rt = params.critical_point.numerator * pow(params.critical_point.denominator, -1, mod) % mod
    shifted = B.shift(rt)
    coeffs = tuple(shifted.coeffs) + (0,) * (3 - len(shifted.coeffs))
    v0 = _capped_valuation(coeffs[0], pk, m)
    v1 = _capped_valuation(coeffs[1], pk, m)
    poly = polygon_from_points([(0, v0), (1, v1), (2, 0)])
    slope = poly.segments[0][0] if len(poly.segments) == 1 else None
    root_val = -slope if slope is not None else None
    common = dict(double_root=r, simple_roots=simple_roots,
                  simple_part_degree=gbar.degree, critical_valuation=v,
                  precision=m, lifted_quadratic=coeffs,
                  lifted_quadratic_slope=root_val)
    if v0 != v or v0 >= m:
        return TranspositionCert(k, pk, "iii", detail="constant term valuation "
                                 f"{v0} does not match critical value valuation {v}",
                                 **common)
    if root_val is None:
        return TranspositionCert(k, pk, "iii", detail="polygon has more than one segment",
                                 **common)
    if root_val.denominator != 2:
        return TranspositionCert(k, pk, "iii", detail=f"slope {root_val} is integral",
                                 **common)
    return TranspositionCert(k, pk, None, **common)


# -- tame behaviour at pinf ------------------------------------------------

def check_split_unramified(n: int, B, l: int) -> bool:
    """Whether X(X - B)^(n-1) + B visibly splits over an unramified extension.

    Checks that S(X) = X^n / B + X^(n-1) + 1 reduces to X^(n-1) + 1 mod l,
    that this reduction is separable, and that the Newton polygon of S is one
    slope-0 segment of length n-1 followed by a slope-1 segment of length 1.
    """
    B = Fraction(B)
    if not is_probable_prime(l):
        raise DomainError(f"{l} is not prime")
    if vp(B, l) != -1:
        raise DomainError(f"v_{l}(B) must be -1")
    if (n - 1) % l == 0:
        raise DomainError(f"{l} divides n - 1")
    S = PolyRat([1] + [0] * (n - 2) + [1, 1 / B])
    Sbar = reduce_mod(S, l)
    if Sbar != PolyFp(l, [1] + [0] * (n - 2) + [1]):
        return False
    if Sbar.gcd(Sbar.derivative()).degree != 0:
        return False
    return newton_polygon(S, l).segments == ((0, n - 1), (1, 1))


@dataclass(frozen=True)
class TameLevel:
    level: int
    segments: tuple            # Newton polygon of g_i in valuation space
    eps_valuation: Fraction    # v(eps_i) read off the polygon
    branching: int             # preimages of valuation -1 under f


@dataclass(frozen=True)
class TameInfinityCert:
    pinf: int | None
    k_max: int
    levels: tuple
    eps_valuations: tuple      # v(eps_i), i = 0..k_max, eps_i = (r_i - A)/A
    offset_valuations: tuple   # v(r_k - A) = v(A) + v(eps_k), k = 1..k_max
    formula_valuations: tuple  # 1 + sum_{i<=k} (n-1)/(n-a)^i, k = 1..k_max
    orbit_sizes: tuple         # e_k, k = 1..k_max
    split_unramified: bool | None
    vacuous: bool = False
    reason: str | None = None

    @property
    def valid(self) -> bool:
        return self.reason is None


def tame_valuation_formula(n: int, a: int, k: int) -> Fraction:
    """The closed form 1 + sum_{i=1}^k (n-1)/(n-a)^i."""
    return 1 + sum(Fraction(n - 1, (n - a) ** i) for i in range(1, k + 1))


def certify_tame_infinity(params: OdoniParams, k_max: int, pinf: int | None = None
                          ) -> TameInfinityCert:
    """Valuation-space certificate at pinf, level by level up to ``k_max``.

    For each level the polygon of A^n (1+X)^a X^(n-a) + eps_{i-1} A must show
    exactly a roots of valuation 0 and n-a roots of valuation
    (v(eps_{i-1}) + n - 1)/(n - a); and the polygon of f(X) - eps with
    v(eps) = -1 must show exactly n-a roots of valuation -1.
    """
    n, a, A = params.n, params.a, params.A
    m = n - a
    if n == 2:
        return TameInfinityCert(pinf, k_max, (), (Fraction(0),) * (k_max + 1), (), (),
                                tuple(1 for _ in range(k_max)), None, vacuous=True)
    if pinf is None:
        pinf = check_hypotheses(params).pinf
    if pinf is None or not is_probable_prime(pinf) or vp(A, pinf) != -1 or pinf <= n:
        return TameInfinityCert(pinf, k_max, (), (), (), (), (), None,
                                reason="no valid prime at infinity")
    vA = vp(A, pinf)
    binom_v = [vp(math.comb(a, j), pinf) for j in range(a + 1)]

    # preimages of an eps with v(eps) = -1: the constant A - eps has valuation
    # >= -1, so both extremes (exactly -1, or cancelled away) are checked
    tail_pts = [(j, (n - j) * vA + vp(math.comb(m, n - j), pinf)) for j in range(a, n + 1)]
    branching_ok = True
    branching = 0
    for const in (vA, INFINITY):
        poly = polygon_from_points([(0, const)] + tail_pts)
        branching = sum(1 for val in poly.root_valuations() if val == -1)
        branching_ok &= branching == m

    eps = [Fraction(0)]
    levels = []
    reason = None if branching_ok else "preimage polygon is not (n-a)-branching"
    for i in range(1, k_max + 1):
        pts = [(0, eps[-1] + vA)]
        pts += [(m + j, n * vA + binom_v[j]) for j in range(a + 1)]
        poly = polygon_from_points(pts)
        predicted = eps[-1] / m + Fraction(n - 1, m)
        vals = poly.root_valuations()
        ok = (sorted(vals) == sorted([Fraction(0)] * a + [predicted] * m)
              and predicted > 0)
        if not ok and reason is None:
            reason = f"polygon mismatch at level {i}"
        levels.append(TameLevel(i, poly.segments, predicted, branching))
        eps.append(predicted)

    formula = tuple(tame_valuation_formula(n, a, k) for k in range(1, k_max + 1))
    if reason is None and any(fk - ek != 1 for fk, ek in zip(formula, eps[1:])):
        reason = "closed form disagrees with the recursion"
    orbit_sizes = tuple(m ** k if a > 1 else m ** (k - 1) for k in range(1, k_max + 1))
    split = None
    if a == 1:
        split = check_split_unramified(n, A, pinf)
        if not split and reason is None:
            reason = "f does not split over an unramified extension at pinf"
    return TameInfinityCert(pinf, k_max, tuple(levels), tuple(eps),
                            tuple(vA + e for e in eps[1:]), formula, orbit_sizes,
                            split, reason=reason)


# -- the one-parameter family ----------------------------------------------

@dataclass(frozen=True)
class FamilyDiscriminantCheck:
    n: int
    passed: bool
    sign: int | None
    computed: PolyRat
    expected: PolyRat
    zero_multiplicity: int
    modulus_power: Fraction | None     # |root|^(n-1) shared by the nonzero roots
    root_moduli: tuple = field(default=())

    def __bool__(self) -> bool:
        return self.passed


def family_expected_discriminant(n: int) -> PolyRat:
    """n^n (-t)^(n-1) ((1/n)((n-1)t/n)^(n-1) + 1) as a polynomial in t."""
    t = X
    inner = Fraction(1, n) * (Fraction(n - 1, n) * t) ** (n - 1) + 1
    return n ** n * (-t) ** (n - 1) * inner


def family_discriminant_check(n: int) -> FamilyDiscriminantCheck:
    """Compare disc_X(X^n - t X^(n-1) - t), computed in Q[t], with the closed form."""
    if not 3 <= n <= 12:
        raise DomainError("family_discriminant_check supports 3 <= n <= 12")
    t = X
    coeffs = [-t] + [PolyRat()] * (n - 2) + [-t, PolyRat((1,))]
    computed = discriminant_over_qt(coeffs)
    expected = family_expected_discriminant(n)
    sign = 1 if computed == expected else (-1 if computed == -expected else None)

    zmult = next(i for i, c in enumerate(expected.coeffs) if c)
    rest = PolyRat(expected.coeffs[zmult:])
    binomial = (rest.degree == n - 1
                and all(not c for c in rest.coeffs[1:-1]) and rest.coeffs[0] != 0)
    modulus_power = abs(rest.coeffs[0] / rest.lc) if binomial else None
    roots = np.roots([float(c) for c in reversed(rest.coeffs)])
    moduli = tuple(float(x) for x in np.abs(roots))
    passed = sign is not None and zmult == n - 1 and binomial
    return FamilyDiscriminantCheck(n, passed, sign, computed, expected, zmult,
                                   modulus_power, moduli)
