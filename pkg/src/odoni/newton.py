"""p-adic Newton polygons.

Convention used throughout the package: the polygon is the lower convex hull
of the points ``(i, v_p(a_i))``, segment slopes are read left to right, and a
segment of slope ``s`` and length ``l`` accounts for ``l`` roots of valuation
``-s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .arith import INFINITY, vp
from .errors import DomainError
from .poly import PolyRat


@dataclass(frozen=True)
class NewtonPolygon:
    segments: tuple   # ((slope, length), ...) with strictly increasing slopes
    anchors: tuple    # hull vertices (i, v)
    zero_roots: int = 0

    @property
    def length(self) -> int:
        return sum(l for _, l in self.segments)

    def root_valuations(self) -> list[Fraction]:
        out = []
        for slope, length in self.segments:
            out += [-slope] * length
        return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def polygon_from_points(points: Iterable[tuple[int, object]]) -> NewtonPolygon:
    """Lower convex hull of ``(i, v)`` points; infinite valuations are skipped."""
    pts = sorted((i, Fraction(v)) for i, v in points if v != INFINITY)
    if not pts:
        raise DomainError("no finite points to build a polygon from")
    hull: list = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        if hull and hull[-1][0] == pt[0]:
            continue
        hull.append(pt)
    segments = []
    for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
        segments.append((Fraction(v1 - v0, i1 - i0), i1 - i0))
    return NewtonPolygon(tuple(segments), tuple(hull), zero_roots=pts[0][0])


def newton_polygon(f: PolyRat, p: int) -> NewtonPolygon:
    if not f:
        raise DomainError("Newton polygon of the zero polynomial")
    return polygon_from_points((i, vp(c, p)) for i, c in enumerate(f.coeffs))


def root_valuations(f: PolyRat, p: int) -> list[Fraction]:
    """Valuations of the nonzero roots, one entry per root (descending).

    Roots at 0 are not listed; their count is ``newton_polygon(f, p).zero_roots``.
    """
    return newton_polygon(f, p).root_valuations()


def is_eisenstein(f: PolyRat, p: int) -> bool:
    if not f or f.lc != 1:
        raise DomainError("is_eisenstein expects a monic polynomial")
    vals = [vp(c, p) for c in f.coeffs]
    if any(v < 0 for v in vals):
        raise DomainError(f"polynomial is not {p}-integral")
    return vals[0] == 1 and all(v >= 1 for v in vals[:-1])
