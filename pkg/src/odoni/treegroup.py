"""Automorphisms of the regular rooted tree T_{n,k} as portraits.

Vertices at level j are numbered 0..n**j - 1 by reading their path
(d_1, ..., d_j) as a base-n integer with d_1 most significant, so the
children of vertex v are v*n + d. An element is stored as its portrait: one
permutation of {0..n-1} per internal vertex, kept level by level as integer
arrays of shape (n**j, n). Element u acts on a path by sending digit d at
vertex x to u_x(d), and products compose right to left: (uv)(x) = u(v(x)).

Subgroup orders come from a Schreier-Sims stabilizer chain for the action on
all non-root vertices, with a level-major base. Because every level-j vertex
precedes every level-(j+1) vertex in the base, the pointwise stabilizer of
levels <= N is a tail of the chain.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import is_probable_prime
from .errors import DomainError, SizeGuardError

DEFAULT_LEAF_CAP = 3 ** 9
EXHAUSTIVE_CAP = 10 ** 6


def _guard(n: int, k: int, allow_large: bool) -> None:
    if n < 2 or k < 0:
        raise DomainError("need n >= 2 and k >= 0")
    if not allow_large and n ** k > DEFAULT_LEAF_CAP:
        raise SizeGuardError(f"n^k = {n ** k} exceeds the default cap {DEFAULT_LEAF_CAP}")


@dataclass(frozen=True)
class TreeIndex:
    level: int
    path: tuple

    def __post_init__(self):
        if len(self.path) != self.level:
            raise DomainError("path length must equal level")

    def to_int(self, n: int) -> int:
        out = 0
        for d in self.path:
            if not 0 <= d < n:
                raise DomainError(f"digit {d} out of range for n={n}")
            out = out * n + d
        return out

    @classmethod
    def from_int(cls, n: int, level: int, v: int) -> "TreeIndex":
        digits = []
        for _ in range(level):
            v, d = divmod(v, n)
            digits.append(d)
        return cls(level, tuple(reversed(digits)))


def cycle_type(perm) -> tuple:
    """Cycle lengths of a permutation given as an image array, ascending."""
    perm = list(perm)
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        out.append(length)
    return tuple(sorted(out))


class WreathElement:
    __slots__ = ("n", "k", "portrait")

    def __init__(self, n: int, k: int, portrait):
        self.n, self.k = n, k
        levels = []
        for j in range(k):
            arr = np.asarray(portrait[j], dtype=np.int64).reshape(n ** j, n)
            if not (np.sort(arr, axis=1) == np.arange(n)).all():
                raise DomainError(f"level {j} labels are not permutations")
            arr.setflags(write=False)
            levels.append(arr)
        self.portrait = tuple(levels)

    @classmethod
    def identity(cls, n: int, k: int) -> "WreathElement":
        return cls(n, k, [np.tile(np.arange(n), (n ** j, 1)) for j in range(k)])

    @classmethod
    def at_vertex(cls, n: int, k: int, level: int, vertex: int, perm) -> "WreathElement":
        """The element whose only nontrivial label is ``perm`` at one vertex."""
        if not 0 <= level < k or not 0 <= vertex < n ** level:
            raise DomainError("vertex outside the internal tree")
        levels = [np.tile(np.arange(n), (n ** j, 1)) for j in range(k)]
        levels[level][vertex] = perm
        return cls(n, k, levels)

    def vertex_perm(self, level: int) -> np.ndarray:
        """Action on the n**level vertices of the given level."""
        img = np.zeros(1, dtype=np.int64)
        for j in range(level):
            img = (img[:, None] * self.n + self.portrait[j]).reshape(-1)
        return img

    def leaf_perm(self) -> np.ndarray:
        return self.vertex_perm(self.k)

    def cycle_type(self) -> tuple:
        return cycle_type(self.leaf_perm())

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        if (self.n, self.k) != (other.n, other.k):
            raise DomainError("elements live on different trees")
        levels = []
        for j in range(self.k):
            moved = self.portrait[j][other.vertex_perm(j)]
            levels.append(np.take_along_axis(moved, other.portrait[j], axis=1))
        return WreathElement(self.n, self.k, levels)

    def inverse(self) -> "WreathElement":
        levels = []
        for j in range(self.k):
            inv_v = np.argsort(self.vertex_perm(j))
            # (u^-1)_y = (u_{u^-1(y)})^-1
            levels.append(np.argsort(self.portrait[j][inv_v], axis=1))
        return WreathElement(self.n, self.k, levels)

    def __eq__(self, other) -> bool:
        return (isinstance(other, WreathElement) and (self.n, self.k) == (other.n, other.k)
                and all((a == b).all() for a, b in zip(self.portrait, other.portrait)))

    def __hash__(self) -> int:
        return hash((self.n, self.k) + tuple(a.tobytes() for a in self.portrait))

    def is_identity(self) -> bool:
        return all((a == np.arange(self.n)).all() for a in self.portrait)

    def all_points_perm(self) -> np.ndarray:
        """Action on every non-root vertex, numbered level-major."""
        parts = []
        offset = 0
        for j in range(1, self.k + 1):
            parts.append(self.vertex_perm(j) + offset)
            offset += self.n ** j
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def __repr__(self) -> str:
        return f"WreathElement(n={self.n}, k={self.k}, leaf cycle type={self.cycle_type()})"


def leaf_action(w: WreathElement) -> tuple[np.ndarray, tuple]:
    perm = w.leaf_perm()
    return perm, cycle_type(perm)


# -- closed forms ----------------------------------------------------------

def wreath_order(n: int, k: int) -> int:
    """|Aut(T_{n,k})| = (n!)^((n^k - 1)/(n - 1))."""
    return math.factorial(n) ** ((n ** k - 1) // (n - 1))


def gamma_order(n: int, k: int, N: int) -> int:
    """|Gamma(N)| inside Aut(T_{n,k}): portraits free below level N only."""
    if not 0 <= N <= k:
        raise DomainError("need 0 <= N <= k")
    return math.factorial(n) ** ((n ** k - n ** N) // (n - 1))


# -- standard elements -----------------------------------------------------

def odometer(n: int, k: int) -> WreathElement:
    """Adds 1 to the leaf path read with d_1 as the least significant digit.

    The label at (d_1..d_j) is the n-cycle d -> d + 1 exactly when every
    d_i equals n - 1; the root always carries it.
    """
    rot = np.roll(np.arange(n), -1)
    levels = []
    for j in range(k):
        arr = np.tile(np.arange(n), (n ** j, 1))
        arr[n ** j - 1] = rot          # the all-(n-1) path is the last vertex
        levels.append(arr)
    return WreathElement(n, k, levels)


def sibling_transposition(n: int, k: int, level: int, vertex: int = 0) -> WreathElement:
    """Swap children 0 and 1 of one vertex at the given level (0 <= level < k)."""
    perm = np.arange(n)
    perm[[0, 1]] = [1, 0]
    return WreathElement.at_vertex(n, k, level, vertex, perm)


def subtree_odometer(n: int, k: int, m: int, N: int) -> WreathElement:
    """Odometer on the m-branching subtree above the all-zero level-N vertex.

    The subtree uses child digits 0..m-1 only; digits m..n-1 are fixed.
    """
    if not 1 <= m <= n or not 0 <= N <= k:
        raise DomainError("need 1 <= m <= n and 0 <= N <= k")
    rot = np.arange(n)
    rot[:m] = np.roll(np.arange(m), -1)
    levels = [np.tile(np.arange(n), (n ** j, 1)) for j in range(k)]
    for j in range(N, k):
        # vertex 0^N followed by (m-1)^(j-N)
        v = 0
        for _ in range(j - N):
            v = v * n + (m - 1)
        levels[j][v] = rot
    return WreathElement(n, k, levels)


def sigma_pair_ok(n: int, a: int) -> bool:
    """a = 1, or a < n/2 with n - a prime."""
    return a == 1 or (0 < a and 2 * a < n and is_probable_prime(n - a))


def standard_sigmas(n: int, a: int, k: int, N: int,
                    allow_large: bool = False) -> list[WreathElement]:
    """[sigma_0, sigma_{N+1}, ..., sigma_k, sigma_inf] on T_{n,k}.

    sigma_0 is the odometer, sigma_j a sibling transposition above the first
    level-(j-1) vertex, and sigma_inf the (n-a)-branching subtree odometer
    rooted at level N.
    """
    if not sigma_pair_ok(n, a):
        raise DomainError(f"(n, a) = ({n}, {a}) needs a = 1, or a < n/2 with n - a prime")
    if N not in (0, 1) or k <= N:
        raise DomainError("need N in {0, 1} and k > N")
    _guard(n, k, allow_large)
    out = [odometer(n, k)]
    out += [sibling_transposition(n, k, j - 1) for j in range(N + 1, k + 1)]
    out.append(subtree_odometer(n, k, n - a, N))
    return out


def full_generators(n: int, k: int) -> list[WreathElement]:
    """A transposition and an n-cycle at every internal vertex."""
    cyc = np.roll(np.arange(n), -1)
    out = []
    for j in range(k):
        for v in range(n ** j):
            out.append(sibling_transposition(n, k, j, v))
            if n > 2:
                out.append(WreathElement.at_vertex(n, k, j, v, cyc))
    return out


# -- Schreier-Sims ---------------------------------------------------------

def _inv(p: np.ndarray) -> np.ndarray:
    return np.argsort(p)


def _then(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Apply a, then b."""
    return b[a]


class GroupHandle:
    """Stabilizer chain of a subgroup of Aut(T_{n,k}) acting on all vertices."""

    def __init__(self, gens: list[WreathElement], n: int | None = None, k: int | None = None):
        if gens:
            n, k = gens[0].n, gens[0].k
            if any((g.n, g.k) != (n, k) for g in gens):
                raise DomainError("generators live on different trees")
        if n is None or k is None:
            raise DomainError("an empty generating set needs explicit n and k")
        self.n, self.k = n, k
        self.gens = list(gens)
        self.degree = sum(n ** j for j in range(1, k + 1))
        self.base = list(range(self.degree))
        self._identity = np.arange(self.degree)
        self._build([g.all_points_perm() for g in gens])

    def _orbit(self, level: int) -> dict:
        b = self.base[level]
        trans = {b: self._identity}
        queue = [b]
        for x in queue:
            for s in self.strong[level]:
                y = int(s[x])
                if y not in trans:
                    trans[y] = _then(trans[x], s)
                    queue.append(y)
        return trans

    def _sift(self, h: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for j in range(start, len(self.base)):
            beta = int(h[self.base[j]])
            t = self.transversal[j].get(beta)
            if t is None:
                return h, j
            h = _then(h, _inv(t))
        return h, len(self.base)

    def _build(self, gens: list[np.ndarray]) -> None:
        L = len(self.base)
        self.strong = [[] for _ in range(L)]
        for g in gens:
            moved = np.flatnonzero(g != self._identity)
            if moved.size == 0:
                continue
            first = self.base.index(int(moved[0]))
            for level in range(first + 1):
                self.strong[level].append(g)
        self.transversal = [self._orbit(level) for level in range(L)]
        i = L - 1
        while i >= 0:
            restart = False
            for beta, u in list(self.transversal[i].items()):
                for s in self.strong[i]:
                    h = _then(_then(u, s), _inv(self.transversal[i][int(s[beta])]))
                    r, j = self._sift(h, i + 1)
                    if j < L:
                        for level in range(i + 1, j + 1):
                            self.strong[level].append(r)
                            self.transversal[level] = self._orbit(level)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        return math.prod(len(t) for t in self.transversal)

    def stabilizer_order(self, N: int) -> int:
        """|G ∩ Gamma(N)|, read off the tail of the chain."""
        if not 0 <= N <= self.k:
            raise DomainError("need 0 <= N <= k")
        skip = sum(self.n ** j for j in range(1, N + 1))
        return math.prod(len(t) for t in self.transversal[skip:])

    def __contains__(self, w: WreathElement) -> bool:
        r, j = self._sift(w.all_points_perm(), 0)
        return j == len(self.base) and bool((r == self._identity).all())


def bsgs_order(gens: list[WreathElement]) -> int:
    if not gens:
        return 1
    return GroupHandle(gens).order()


def contains_gamma(gens: list[WreathElement], n: int, k: int, N: int) -> bool:
    """Whether the subgroup generated by ``gens`` contains Gamma(N)."""
    h = GroupHandle(gens, n, k)
    return h.stabilizer_order(N) == gamma_order(n, k, N)


# -- cycle type distributions ----------------------------------------------

def _exhaustive(n: int, k: int) -> dict:
    vertices = [(j, v) for j in range(k) for v in range(n ** j)]
    perms = list(itertools.permutations(range(n)))
    counts: Counter = Counter()
    for labels in itertools.product(perms, repeat=len(vertices)):
        levels = []
        pos = 0
        for j in range(k):
            levels.append(labels[pos:pos + n ** j])
            pos += n ** j
        img = np.zeros(1, dtype=np.int64)
        for j in range(k):
            img = (img[:, None] * n + np.asarray(levels[j])).reshape(-1)
        counts[cycle_type(img)] += 1
    total = sum(counts.values())
    return {t: Fraction(c, total) for t, c in sorted(counts.items())}


def _sampled(n: int, k: int, count: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    img = np.zeros((count, 1), dtype=np.int64)
    for j in range(k):
        labels = rng.permuted(np.broadcast_to(np.arange(n), (count, n ** j, n)), axis=2)
        img = (img[:, :, None] * n + labels).reshape(count, -1)
    counts = Counter(cycle_type(row) for row in img.tolist())
    return {t: c / count for t, c in sorted(counts.items())}


def cycle_type_distribution(n: int, k: int, method: str = "exhaustive",
                            count: int = 100_000, seed: int = 0) -> dict:
    """Distribution of leaf cycle types over Aut(T_{n,k}).

    ``"exhaustive"`` enumerates every portrait and returns exact Fractions
    (only when the group has at most 10**6 elements). ``"sampled"`` draws
    ``count`` independent uniform portraits from a seeded generator.
    """
    if method == "exhaustive":
        if wreath_order(n, k) > EXHAUSTIVE_CAP:
            raise SizeGuardError(f"|Aut(T_{{{n},{k}}})| exceeds {EXHAUSTIVE_CAP}")
        return _exhaustive(n, k)
    if method == "sampled":
        _guard(n, k, False)
        return _sampled(n, k, count, seed)
    raise DomainError(f"unknown method {method!r}")


def fixed_point_free_mass(dist: dict):
    return sum(p for t, p in dist.items() if 1 not in t)


def total_variation(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return float(sum(abs(Fraction(p.get(t, 0)) - Fraction(q.get(t, 0))) for t in keys)) / 2
