from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from odoni.errors import DomainError, SizeGuardError
from odoni.treegroup import (GroupHandle, TreeIndex, WreathElement, bsgs_order,
                             contains_gamma, cycle_type, cycle_type_distribution,
                             fixed_point_free_mass, full_generators, gamma_order,
                             leaf_action, odometer, sibling_transposition,
                             standard_sigmas, subtree_odometer, total_variation,
                             wreath_order)


def random_element(n, k, seed):
    rng = np.random.default_rng(seed)
    return WreathElement(n, k, [np.array([rng.permutation(n) for _ in range(n ** j)])
                                for j in range(k)])


def test_tree_index():
    v = TreeIndex(3, (1, 0, 2))
    assert v.to_int(3) == 1 * 9 + 0 * 3 + 2
    assert TreeIndex.from_int(3, 3, 11) == v
    with pytest.raises(DomainError):
        TreeIndex(2, (0,))


def test_orders():
    assert wreath_order(2, 2) == 8
    assert wreath_order(2, 3) == 128
    assert wreath_order(3, 2) == 1296
    assert wreath_order(5, 0) == 1
    assert gamma_order(2, 2, 1) == 4
    assert gamma_order(3, 2, 0) == wreath_order(3, 2)
    assert gamma_order(3, 2, 2) == 1
    with pytest.raises(DomainError):
        gamma_order(2, 2, 3)


@settings(max_examples=40)
@given(st.sampled_from([(2, 3), (3, 2), (4, 2), (2, 4)]), st.integers(0, 10 ** 6),
       st.integers(0, 10 ** 6))
def test_leaf_action_is_a_homomorphism(nk, s1, s2):
    n, k = nk
    u, v = random_element(n, k, s1), random_element(n, k, s2)
    uv = u * v
    assert (uv.leaf_perm() == u.leaf_perm()[v.leaf_perm()]).all()
    assert (u * u.inverse()).is_identity()
    assert u.inverse().inverse() == u
    # parent(image of x) = image of parent(x) at every level
    for j in range(1, k + 1):
        img, up = u.vertex_perm(j), u.vertex_perm(j - 1)
        assert (img // n == up[np.arange(n ** j) // n]).all()


def test_leaf_action_examples():
    e = WreathElement.identity(2, 3)
    assert leaf_action(e)[1] == (1,) * 8
    assert odometer(2, 3).cycle_type() == (8,)
    assert sibling_transposition(2, 3, 2, 1).cycle_type() == (1,) * 6 + (2,)
    for n, k in [(2, 1), (3, 3), (5, 2), (4, 3)]:
        assert odometer(n, k).cycle_type() == (n ** k,)


def test_element_validation():
    with pytest.raises(DomainError):
        WreathElement(2, 1, [[[0, 0]]])
    with pytest.raises(DomainError):
        odometer(2, 2) * odometer(3, 2)


def _sympy_group(gens):
    return PermutationGroup([Permutation(g.all_points_perm().tolist()) for g in gens])


def test_bsgs_examples():
    s3 = [WreathElement(3, 1, [[[1, 0, 2]]]), WreathElement(3, 1, [[[1, 2, 0]]])]
    assert bsgs_order(s3) == 6
    assert bsgs_order([odometer(2, 2)]) == 4
    for n, k in [(2, 2), (2, 3), (3, 2)]:
        assert bsgs_order(full_generators(n, k)) == wreath_order(n, k)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (2, 4)]), st.integers(0, 10 ** 6), st.integers(1, 4))
def test_bsgs_matches_sympy(nk, seed, count):
    n, k = nk
    gens = [random_element(n, k, seed + i) for i in range(count)]
    assert bsgs_order(gens) == _sympy_group(gens).order()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_membership(seed):
    gens = [random_element(2, 3, seed), random_element(2, 3, seed + 1)]
    h = GroupHandle(gens)
    assert gens[0] * gens[1].inverse() in h
    assert WreathElement.identity(2, 3) in h
    sg = _sympy_group(gens)
    other = random_element(2, 3, seed + 2)
    assert (other in h) == sg.contains(Permutation(other.all_points_perm().tolist()))


def test_contains_gamma_examples():
    assert contains_gamma(full_generators(2, 3), 2, 3, 0)
    assert not contains_gamma([WreathElement.identity(2, 3)], 2, 3, 0)
    assert not contains_gamma([], 2, 3, 2)
    assert contains_gamma([], 2, 3, 3)
    for n, a, k, N in [(2, 1, 2, 0), (2, 1, 3, 0), (3, 1, 2, 0), (3, 1, 3, 1), (5, 2, 2, 0)]:
        assert contains_gamma(standard_sigmas(n, a, k, N), n, k, N)


def test_contains_gamma_monotone():
    gens = standard_sigmas(3, 1, 2, 0)
    base = contains_gamma(gens[:2], 3, 2, 0)
    for extra in full_generators(3, 2)[:4]:
        assert contains_gamma(gens[:2] + [extra], 3, 2, 0) >= base
    assert contains_gamma(gens + [odometer(3, 2)], 3, 2, 0)


def test_dropping_families_at_2130():
    s = standard_sigmas(2, 1, 3, 0)
    sigma0, sigmak, sigma_inf = s[0], s[1:-1], s[-1]
    assert sigma_inf.is_identity()                           # n - a = 1
    assert not contains_gamma([sigma0, sigma_inf], 2, 3, 0)  # no transpositions
    # one transposition per level already generates Aut(T_{2,3})
    assert contains_gamma(sigmak + [sigma_inf], 2, 3, 0)
    assert contains_gamma([sigma0] + sigmak, 2, 3, 0)
    assert not contains_gamma([sigma0, sigmak[0]], 2, 3, 0)


def test_standard_sigmas_shapes():
    s = standard_sigmas(3, 1, 2, 1)
    assert s[0].cycle_type() == (9,)
    assert len(s) == 3
    assert s[1].cycle_type() == (1,) * 7 + (2,)
    perm = s[-1].leaf_perm().tolist()
    assert perm[:2] == [1, 0] and perm[2:] == list(range(2, 9))
    sub = subtree_odometer(5, 3, 3, 0)
    perm = sub.leaf_perm()
    orbit, x = [0], int(perm[0])
    while x != 0:
        orbit.append(x)
        x = int(perm[x])
    subtree = [TreeIndex(3, (a, b, c)).to_int(5) for a in range(3) for b in range(3) for c in range(3)]
    assert sorted(orbit) == sorted(subtree)
    with pytest.raises(DomainError):
        standard_sigmas(3, 2, 2, 0)
    with pytest.raises(DomainError):
        standard_sigmas(3, 1, 1, 1)
    with pytest.raises(SizeGuardError):
        standard_sigmas(3, 1, 10, 0)
    assert len(standard_sigmas(2, 1, 2, 0)) == 4


def test_distribution_exact():
    assert cycle_type_distribution(2, 1) == {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)}
    d = cycle_type_distribution(2, 2)
    assert d == {(1, 1, 1, 1): Fraction(1, 8), (1, 1, 2): Fraction(1, 4),
                 (2, 2): Fraction(3, 8), (4,): Fraction(1, 4)}
    assert fixed_point_free_mass(d) == Fraction(5, 8)


@pytest.mark.parametrize("nk", [(2, 3), (3, 2)])
def test_distribution_matches_sympy_enumeration(nk):
    n, k = nk
    leaf_gens = [Permutation(g.leaf_perm().tolist()) for g in full_generators(n, k)]
    counts = Counter()
    for g in PermutationGroup(leaf_gens).generate():
        counts[tuple(sorted(len(c) for c in g.full_cyclic_form))] += 1
    total = sum(counts.values())
    assert total == wreath_order(n, k)
    assert cycle_type_distribution(n, k) == {t: Fraction(c, total) for t, c in counts.items()}


def test_sampled_distribution():
    exact = cycle_type_distribution(2, 3)
    sampled = cycle_type_distribution(2, 3, "sampled", count=100_000, seed=7)
    assert total_variation(sampled, exact) < 0.02
    assert cycle_type_distribution(2, 3, "sampled", count=1000, seed=3) == \
        cycle_type_distribution(2, 3, "sampled", count=1000, seed=3)


def test_distribution_guards():
    with pytest.raises(SizeGuardError):
        cycle_type_distribution(3, 3)
    with pytest.raises(DomainError):
        cycle_type_distribution(2, 2, "bogus")


def test_cycle_type_helper():
    assert cycle_type([1, 2, 0, 4, 3, 5]) == (1, 2, 3)
