"""Dense univariate polynomials over Q and over Z/mZ.

Coefficient tuples are stored lowest degree first. ``PolyRat`` holds
``Fraction`` coefficients; ``PolyMod`` holds residues modulo an arbitrary
integer (used for Hensel lifts modulo p**m) and ``PolyFp`` specialises it to
a prime modulus, adding gcds and factorization.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Sequence

from .arith import as_rational, is_probable_prime
from .errors import BadReduction, DegreeCapError, DomainError

MAX_COEFFS = 10 ** 6


def _check_cap(length: int) -> None:
    if length > MAX_COEFFS:
        raise DegreeCapError(f"polynomial would need {length} coefficients "
                             f"(cap {MAX_COEFFS})")


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    _check_cap(len(a) + len(b) - 1)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _lcm_den(coeffs: Sequence[Fraction]) -> int:
    return reduce(math.lcm, (c.denominator for c in coeffs), 1)


@dataclass(frozen=True)
class PolyRat:
    """Polynomial with rational coefficients, ``coeffs[i]`` multiplies X**i."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = _trim([as_rational(x) for x in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls) -> "PolyRat":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "PolyRat":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> "PolyRat":
        out = cls((1,))
        for r in roots:
            out = out * cls((-as_rational(r), 1))
        return out

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _lift(self, other) -> "PolyRat":
        if isinstance(other, PolyRat):
            return other
        return PolyRat((other,))

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyRat(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return PolyRat(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyRat):
            c = as_rational(other)
            return PolyRat(tuple(c * x for x in self.coeffs))
        if not self or not other:
            return PolyRat()
        da, db = _lcm_den(self.coeffs), _lcm_den(other.coeffs)
        ia = [int(c * da) for c in self.coeffs]
        ib = [int(c * db) for c in other.coeffs]
        d = da * db
        return PolyRat(tuple(Fraction(x, d) for x in _int_mul(ia, ib)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative power of a polynomial")
        out, base = PolyRat((1,)), self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __call__(self, x):
        """Evaluate at a number, or compose when ``x`` is a polynomial."""
        if isinstance(x, PolyRat):
            return compose(self, x)
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __divmod__(self, other: "PolyRat"):
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return PolyRat(), self
        q = [Fraction(0)] * (dq + 1)
        inv = 1 / other.lc
        for i in range(dq, -1, -1):
            c = r[i + other.degree] * inv
            q[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[i + j] -= c * b
        return PolyRat(tuple(q)), PolyRat(tuple(r[:other.degree]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> "PolyRat":
        q, r = divmod(self, other)
        if r:
            raise DomainError("inexact polynomial division")
        return q

    def monic(self) -> "PolyRat":
        return self * (1 / self.lc) if self else self

    def shift(self, c) -> "PolyRat":
        """The polynomial ``self(X + c)``."""
        return compose(self, PolyRat((c, 1)))

    def integer_coefficients(self) -> tuple[list[int], int]:
        """``(ints, d)`` with ``self == PolyRat(ints) / d`` and ``d > 0`` minimal."""
        d = _lcm_den(self.coeffs)
        return [int(c * d) for c in self.coeffs], d

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("-" if c < 0 else "+", s))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out


X = PolyRat.x()


def compose(f: PolyRat, g: PolyRat) -> PolyRat:
    """``f(g(X))`` by Horner's rule."""
    if not f:
        return PolyRat()
    if f.degree > 0 and g.degree > 0:
        _check_cap(f.degree * g.degree + 1)
    acc = PolyRat((f.coeffs[-1],))
    for c in reversed(f.coeffs[:-1]):
        acc = acc * g + c
    return acc


def iterate(f: PolyRat, k: int) -> PolyRat:
    """The k-th compositional iterate; ``iterate(f, 0) == X``."""
    if k < 0:
        raise DomainError("iterate needs k >= 0")
    out = X
    for _ in range(k):
        out = compose(f, out)
    return out


def derivative(f: PolyRat) -> PolyRat:
    return PolyRat(tuple(i * c for i, c in enumerate(f.coeffs))[1:])


# -- subresultants ---------------------------------------------------------

def _prem(f: list, g: list) -> list:
    """Pseudo-remainder ``lc(g)**(deg f - deg g + 1) * f mod g``."""
    df, dg = len(f) - 1, len(g) - 1
    lc = g[-1]
    r = list(f)
    n = df - dg + 1
    while len(r) - 1 >= dg and r:
        j = len(r) - 1 - dg
        c = r[-1]
        r = [lc * x for x in r]
        for i, gi in enumerate(g):
            r[i + j] = r[i + j] - c * gi
        r.pop()  # leading term cancels by construction
        _trim(r)
        n -= 1
    scale = lc ** n
    return [scale * x for x in r]


def subresultant_prs(f: list, g: list, exquo: Callable, one) -> tuple[list, list]:
    """Subresultant remainder sequence of coefficient lists (low degree first).

    Coefficients may come from any integral domain whose elements support
    ``+ - *``, ``**`` and truthiness; ``exquo`` performs exact division.
    Requires ``len(f) >= len(g) > 0``. Returns the remainder sequence and the
    list of scalar subresultants; the last scalar is the resultant when the
    last remainder is constant.
    """
    n, m = len(f) - 1, len(g) - 1
    prs = [f, g]
    d = n - m
    h = [x * (-1) ** (d + 1) for x in _prem(f, g)]
    lc = g[-1]
    c = lc ** d
    scalars = [one, c]
    c = -c
    while h:
        k = len(h) - 1
        prs.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = [exquo(x, b) for x in _prem(f, g)]
        lc = g[-1]
        if d > 1:
            c = exquo((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        scalars.append(-c)
    return prs, scalars


def _resultant_lists(f: list, g: list, exquo: Callable, one, zero):
    if not f or not g:
        return zero
    sign = 1
    if len(f) < len(g):
        f, g = g, f
        if ((len(f) - 1) * (len(g) - 1)) % 2:
            sign = -1
    prs, scalars = subresultant_prs(f, g, exquo, one)
    if len(prs[-1]) > 1:
        return zero
    return scalars[-1] * sign


def _frac_exquo(a, b):
    return a / b


def resultant(f: PolyRat, g: PolyRat) -> Fraction:
    return Fraction(_resultant_lists(list(f.coeffs), list(g.coeffs),
                                     _frac_exquo, Fraction(1), Fraction(0)))


def discriminant(f: PolyRat) -> Fraction:
    """``(-1)**(d(d-1)/2) * Res(f, f') / lc(f)`` via subresultants."""
    if not f:
        raise DomainError("discriminant of the zero polynomial")
    d = f.degree
    if d < 1:
        raise DomainError("discriminant needs degree >= 1")
    if d == 1:
        return Fraction(1)
    res = resultant(f, derivative(f))
    return (-1) ** (d * (d - 1) // 2) * res / f.lc


def discriminant_over_qt(coeffs: Sequence[PolyRat]) -> PolyRat:
    """Discriminant of a polynomial in X whose coefficients lie in Q[t].

    ``coeffs[i]`` is the Q[t]-coefficient of X**i. The computation runs the
    same subresultant sequence with exact division in Q[t].
    """
    f = _trim([c if isinstance(c, PolyRat) else PolyRat((c,)) for c in coeffs])
    d = len(f) - 1
    if d < 1:
        raise DomainError("discriminant needs degree >= 1")
    df = [f[i] * i for i in range(1, len(f))]
    one, zero = PolyRat((1,)), PolyRat()
    res = _resultant_lists(f, df, lambda a, b: a.exquo(b), one, zero)
    return (res * (-1) ** (d * (d - 1) // 2)).exquo(f[-1])


# -- modular polynomials ---------------------------------------------------

def _mod_trim(c: list, m: int) -> list:
    return _trim([x % m for x in c])


def _madd(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
                  for i in range(n)])


def _msub(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
                  for i in range(n)])


def _mmul(a, b, m):
    return _mod_trim(_int_mul(a, b), m)


def _mscale(a, c, m):
    return _trim([x * c % m for x in a])


def _mdivmod(a, b, m):
    """Division by ``b`` whose leading coefficient is a unit mod ``m``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, m)
    r = list(a)
    db = len(b) - 1
    dq = len(r) - 1 - db
    if dq < 0:
        return [], _trim(r)
    q = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = r[i + db] * inv % m
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - c * y) % m
    return _trim(q), _trim(r[:db])


def _mrem(a, b, m):
    return _mdivmod(a, b, m)[1]


def _mpowmod(a, e, f, m):
    out, base = [1], _mrem(a, f, m)
    while e:
        if e & 1:
            out = _mrem(_mmul(out, base, m), f, m)
        e >>= 1
        if e:
            base = _mrem(_mmul(base, base, m), f, m)
    return out


def _mgcd(a, b, p):
    """Monic gcd over F_p."""
    while b:
        a, b = b, _mrem(a, b, p)
    if not a:
        return []
    return _mscale(a, pow(a[-1], -1, p), p)


def _mgcdex(a, b, p):
    """``(s, t, g)`` with ``s*a + t*b == g`` monic over F_p."""
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _mdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _msub(s0, _mmul(q, s1, p), p)
        t0, t1 = t1, _msub(t0, _mmul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return _mscale(s0, inv, p), _mscale(t0, inv, p), _mscale(r0, inv, p)


def _mderiv(a, m):
    return _trim([i * c % m for i, c in enumerate(a)][1:])


def _mcompose(f, g, m):
    if not f:
        return []
    acc = [f[-1] % m]
    for c in reversed(f[:-1]):
        acc = _madd(_mmul(acc, g, m), [c], m)
    return acc


def _meval(f, x, m):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % m
    return acc


@dataclass(frozen=True)
class PolyMod:
    """Polynomial with coefficients in Z/mZ, lowest degree first."""

    modulus: int
    coeffs: tuple = ()

    def __post_init__(self):
        if self.modulus < 2:
            raise DomainError("modulus must be >= 2")
        object.__setattr__(self, "coeffs",
                           tuple(_mod_trim(list(self.coeffs), self.modulus)))

    def _new(self, coeffs):
        return type(self)(self.modulus, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def _other(self, other):
        if isinstance(other, PolyMod):
            if other.modulus != self.modulus:
                raise DomainError("moduli differ")
            return list(other.coeffs)
        return [other % self.modulus]

    def __add__(self, other):
        return self._new(_madd(list(self.coeffs), self._other(other), self.modulus))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(_msub(list(self.coeffs), self._other(other), self.modulus))

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __mul__(self, other):
        return self._new(_mmul(list(self.coeffs), self._other(other), self.modulus))

    __rmul__ = __mul__

    def __pow__(self, e):
        out = self._new([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        q, r = _mdivmod(list(self.coeffs), self._other(other), self.modulus)
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        if isinstance(x, PolyMod):
            return self._new(_mcompose(list(self.coeffs), list(x.coeffs), self.modulus))
        return _meval(list(self.coeffs), x, self.modulus)

    def derivative(self):
        return self._new(_mderiv(list(self.coeffs), self.modulus))

    def monic(self):
        if not self.coeffs:
            return self
        return self._new(_mscale(list(self.coeffs), pow(self.lc, -1, self.modulus),
                                 self.modulus))

    def shift(self, c):
        """The polynomial ``self(X + c)``."""
        return self(self._new([c, 1]))

    def __str__(self):
        body = str(PolyRat(self.coeffs))
        return f"{body} (mod {self.modulus})"


class PolyFp(PolyMod):
    """Polynomial over the prime field F_p."""

    def __init__(self, p: int, coeffs=()):
        super().__init__(p, coeffs)

    @property
    def p(self) -> int:
        return self.modulus

    def gcd(self, other: "PolyFp") -> "PolyFp":
        return self._new(_mgcd(list(self.coeffs), list(other.coeffs), self.p))

    def roots(self) -> list[int]:
        fac = factor_mod_p(self, random.Random(0))
        return sorted(-g.coeffs[0] % self.p for g, _ in fac.factors if g.degree == 1)


def iterate_mod(f: PolyMod, k: int) -> PolyMod:
    """The k-th iterate computed entirely modulo ``f.modulus``."""
    out = f._new([0, 1])
    for _ in range(k):
        out = f(out)
    return out


def _residue(c: Fraction, m: int, p: int, index: int) -> int:
    if c.denominator % p == 0:
        raise BadReduction(p, index, c)
    return c.numerator * pow(c.denominator, -1, m) % m


def reduce_mod(f: PolyRat, p: int, m: int = 1) -> PolyFp | PolyMod:
    """Coefficientwise reduction modulo ``p**m`` (``PolyFp`` when ``m == 1``)."""
    if not is_probable_prime(p):
        raise DomainError(f"{p} is not prime")
    mod = p ** m
    coeffs = [_residue(c, mod, p, i) for i, c in enumerate(f.coeffs)]
    return PolyFp(p, coeffs) if m == 1 else PolyMod(mod, coeffs)


# -- factorization over F_p ------------------------------------------------

@dataclass(frozen=True)
class FactorizationFp:
    """``unit * prod(g**e for g, e in factors)`` equals the input."""

    unit: int
    factors: tuple = field(default=())

    def expand(self, p: int) -> PolyFp:
        out = PolyFp(p, [self.unit])
        for g, e in self.factors:
            for _ in range(e):
                out = out * g
        return out

    def degrees(self) -> list[int]:
        """Factor degrees with multiplicity, sorted descending."""
        return sorted((g.degree for g, e in self.factors for _ in range(e)),
                      reverse=True)


def _sqf_list(f: list, p: int) -> list[tuple[list, int]]:
    """Squarefree decomposition of a monic polynomial over F_p."""
    out: list[tuple[list, int]] = []
    mult = 1
    while True:
        df = _mderiv(f, p)
        if df:
            g = _mgcd(f, df, p)
            h = _mdivmod(f, g, p)[0]
            i = 1
            while len(h) > 1:
                G = _mgcd(g, h, p)
                H = _mdivmod(h, G, p)[0]
                if len(H) > 1:
                    out.append((H, i * mult))
                g = _mdivmod(g, G, p)[0]
                h = G
                i += 1
            if len(g) <= 1:
                break
            f = g
        # f is a p-th power: take the root (coefficients are fixed by Frobenius)
        f = f[::p]
        mult *= p
        if len(f) <= 1:
            break
    return out


def _ddf(f: list, p: int) -> list[tuple[list, int]]:
    """Distinct-degree factorization of a monic squarefree polynomial."""
    out = []
    h = [0, 1]
    x = [0, 1]
    i = 1
    while 2 * i <= len(f) - 1:
        h = _mpowmod(h, p, f, p)
        g = _mgcd(f, _msub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            f = _mdivmod(f, g, p)[0]
            h = _mrem(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _edf(f: list, d: int, p: int, rng: random.Random) -> list[list]:
    """Cantor-Zassenhaus equal-degree splitting into degree-d factors."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        r = [rng.randrange(p) for _ in range(n)]
        r = _trim(r)
        if len(r) <= 1:
            continue
        if p == 2:
            t = list(r)
            power = r
            for _ in range(d - 1):
                power = _mpowmod(power, 2, f, p)
                t = _madd(t, power, p)
            h = t
        else:
            h = _msub(_mpowmod(r, (p ** d - 1) // 2, f, p), [1], p)
        g = _mgcd(f, h, p)
        if 1 < len(g) < len(f):
            break
    return (_edf(g, d, p, rng)
            + _edf(_mdivmod(f, g, p)[0], d, p, rng))


def factor_mod_p(f: PolyFp, rng: random.Random | None = None) -> FactorizationFp:
    """Complete factorization into monic irreducibles with multiplicities.

    The result is deterministic for a given ``rng`` state; factors are
    sorted by degree and then coefficients.
    """
    if not f:
        raise DomainError("cannot factor the zero polynomial")
    rng = rng if rng is not None else random.Random(0)
    p = f.p
    unit = f.lc
    monic = list(f.monic().coeffs)
    found: dict[tuple, int] = {}
    for sq, e in _sqf_list(monic, p):
        for g, d in _ddf(sq, p):
            for h in _edf(g, d, p, rng):
                key = tuple(h)
                found[key] = found.get(key, 0) + e
    factors = sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))
    return FactorizationFp(unit, tuple((PolyFp(p, k), e) for k, e in factors))


def factor_degrees_mod_p(f: PolyFp) -> list[int]:
    """Degrees of the irreducible factors (with multiplicity), descending.

    Only squarefree and distinct-degree steps run; no randomness is needed.
    """
    p = f.p
    out = []
    for sq, e in _sqf_list(list(f.monic().coeffs), p):
        for g, d in _ddf(sq, p):
            out += [d] * (((len(g) - 1) // d) * e)
    return sorted(out, reverse=True)


# -- Hensel lifting --------------------------------------------------------

def _as_mod_list(f, mod: int, p: int) -> list[int]:
    if isinstance(f, PolyRat):
        return _mod_trim([_residue(c, mod, p, i) for i, c in enumerate(f.coeffs)], mod)
    if isinstance(f, PolyMod):
        if f.modulus % mod:
            raise DomainError("polynomial is not known to the requested precision")
        return _mod_trim(list(f.coeffs), mod)
    return _mod_trim(list(f), mod)


def hensel_pair_lift(f, p: int, pair: tuple[PolyFp, PolyFp], m: int
                     ) -> tuple[PolyMod, PolyMod]:
    """Lift a coprime monic factorization ``f == b*g (mod p)`` to ``p**m``.

    ``f`` may be a ``PolyRat`` (p-integral) or a ``PolyMod`` known modulo a
    multiple of ``p**m``; its leading coefficient must be a unit mod p and is
    normalised away. Returns monic ``(B, G)`` modulo ``p**m`` with
    ``B == b`` and ``G == g`` mod p and ``B*G == f`` mod ``p**m``.
    """
    if m < 1:
        raise DomainError("target exponent must be >= 1")
    b, g = pair
    if b.p != p or g.p != p:
        raise DomainError("factor pair must live over F_p")
    if b.lc != 1 or g.lc != 1:
        raise DomainError("factor pair must be monic")
    mod = p ** m
    F = _as_mod_list(f, mod, p)
    if not F or F[-1] % p == 0:
        raise DomainError("leading coefficient must be a unit mod p")
    F = _mscale(F, pow(F[-1], -1, mod), mod)
    bl, gl = list(b.coeffs), list(g.coeffs)
    if _mmul(bl, gl, p) != _mod_trim(F, p):
        raise DomainError("pair does not multiply to f mod p")
    s, t, h = _mgcdex(bl, gl, p)
    if h != [1]:
        raise DomainError("pair is not coprime mod p")
    B, G = bl, gl
    pj = p
    for _ in range(1, m):
        nxt = pj * p
        err = _msub(F, _mmul(B, G, nxt), nxt)
        e = [c // pj for c in err]
        e = _mod_trim(e, p)
        beta = _mrem(_mmul(e, t, p), bl, p)
        gamma, rem = _mdivmod(_msub(e, _mmul(beta, gl, p), p), bl, p)
        if rem:
            raise AssertionError("Hensel correction failed to divide")
        B = _madd(B, [c * pj for c in beta], nxt)
        G = _madd(G, [c * pj for c in gamma], nxt)
        pj = nxt
    return PolyMod(mod, B), PolyMod(mod, G)
