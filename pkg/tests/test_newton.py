from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from odoni.arith import vp
from odoni.errors import DomainError
from odoni.newton import is_eisenstein, newton_polygon, polygon_from_points, root_valuations
from odoni.poly import PolyRat, X, iterate


def test_split_polynomial_shape():
    B = Fraction(52, 7)
    n = 3
    S = PolyRat([1] + [0] * (n - 2) + [1, 1 / B])
    assert newton_polygon(S, 7).segments == ((0, n - 1), (1, 1))


def test_examples():
    assert newton_polygon(X ** 3 - 5, 5).segments == ((Fraction(-1, 3), 3),)
    # anchors (0, 1), (1, 0), (2, 0)
    g = X ** 2 - X + 2
    assert newton_polygon(g, 2).segments == ((-1, 1), (0, 1))
    assert root_valuations(g, 2) == [1, 0]
    # v_2(1/2) = -1 puts the first anchor at (0, -1): one segment of slope 1/2,
    # matching |(1 +- i)/2|^2 = 1/2
    half = X ** 2 - X + Fraction(1, 2)
    assert newton_polygon(half, 2).segments == ((Fraction(1, 2), 2),)
    assert root_valuations(half, 2) == [Fraction(-1, 2)] * 2
    assert root_valuations(X - Fraction(9, 2), 3) == [2]


def test_zero_root_and_gaps():
    f = X ** 2 * (X ** 2 - 4)
    poly = newton_polygon(f, 2)
    assert poly.zero_roots == 2
    assert poly.root_valuations() == [1, 1]
    with pytest.raises(DomainError):
        newton_polygon(PolyRat(), 2)
    with pytest.raises(DomainError):
        polygon_from_points([])


units = st.integers(1, 60).filter(lambda u: u % 3)


@given(st.lists(st.tuples(st.integers(-3, 4), units, st.booleans()), min_size=1, max_size=6))
def test_roots_with_known_valuations(case):
    # roots r = +-3^e * u with u a 3-adic unit; the polygon must recover each e
    roots = [Fraction(3) ** e * u * (-1 if s else 1) for e, u, s in case]
    f = PolyRat.from_roots(roots)
    assert sorted(root_valuations(f, 3)) == sorted(Fraction(e) for e, _, _ in case)


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=8).filter(lambda c: c[0] and c[-1]))
def test_polygon_invariants(coeffs):
    f = PolyRat(coeffs)
    poly = newton_polygon(f, 2)
    slopes = [s for s, _ in poly.segments]
    assert slopes == sorted(set(slopes))
    assert poly.length + poly.zero_roots == f.degree
    # sum of slope * length telescopes to v(a_d) - v(a_0)
    assert sum(s * l for s, l in poly.segments) == vp(f.lc, 2) - vp(f[0], 2)


def test_is_eisenstein():
    assert is_eisenstein(X ** 2 - 2, 2)
    assert not is_eisenstein(X ** 2 - X + 1, 3)
    A = Fraction(52, 7)
    f = X * (X - A) ** 2 + A
    assert is_eisenstein(iterate(f, 2), 13)
    with pytest.raises(DomainError):
        is_eisenstein(2 * X ** 2 - 2, 2)
    with pytest.raises(DomainError):
        is_eisenstein(X ** 2 - Fraction(1, 2), 2)


def test_eisenstein_polygon_is_one_segment():
    f = X ** 5 + 6 * X ** 3 + 3 * X + 3
    assert is_eisenstein(f, 3)
    assert newton_polygon(f, 3).segments == ((Fraction(-1, 5), 5),)
