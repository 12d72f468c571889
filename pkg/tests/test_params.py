from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from odoni.errors import DomainError
from odoni.params import (HYPOTHESES, OdoniParams, a3_holds, check_hypotheses,
                          check_hypotheses_with_witnesses, choose_a, exponent_rule,
                          min_two_adic_exponent, perturb, search_A)


def test_choose_a_table():
    # n -> smallest admissible a, worked out by hand from the three rules
    expected = {2: 1, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 1, 9: 2, 10: 3, 11: 4,
                12: 1, 15: 1, 23: 1, 16: 3}
    for n, a in expected.items():
        assert choose_a(n) == a, n


@pytest.mark.parametrize("n", range(2, 40))
def test_choose_a_satisfies_exactly_one_rule(n):
    a = choose_a(n)
    hits = [r for r in ("a1", "a2", "a3") if exponent_rule(n, a) == r]
    assert len(hits) == 1
    assert Fraction(a, n).denominator == n  # gcd(a, n) = 1


def test_params_validation():
    with pytest.raises(DomainError):
        OdoniParams(3, 3, 1)
    with pytest.raises(DomainError):
        OdoniParams(3, 1, 0)
    with pytest.raises(DomainError):
        OdoniParams(3, 1, 2, {4})
    assert OdoniParams(3, 1, "52/7").critical_point == Fraction(52, 21)


def test_worked_hypotheses():
    rep = check_hypotheses(OdoniParams(3, 1, Fraction(52, 7)))
    assert rep.valid and rep.p0 == 13 and rep.pinf == 7
    assert list(rep.verdicts) == list(HYPOTHESES)
    assert check_hypotheses(OdoniParams(3, 1, Fraction(20, 7))).first_failure == "A3"
    assert check_hypotheses(OdoniParams(2, 1, Fraction(160, 7))).first_failure == "A7"
    rep2 = check_hypotheses(OdoniParams(2, 1, Fraction(160, 3)))
    assert rep2.valid and rep2.p0 == 5 and rep2.pinf == 3


def test_witnesses_only_recorded_when_passing():
    rep = check_hypotheses(OdoniParams(3, 1, Fraction(4 * 9, 7)))  # 36/7: no exact prime in 36 prime to 3
    assert not rep.verdicts["A2"] and rep.p0 is None


def test_ramified_primes():
    rep = check_hypotheses(OdoniParams(3, 1, Fraction(52, 7), {13}))
    assert rep.verdicts["A1"] and rep.verdicts["A2"] is False
    rep = check_hypotheses(OdoniParams(3, 1, Fraction(52, 7), {7}))
    assert not rep.verdicts["A1"]


def test_check_with_witnesses():
    p = OdoniParams(3, 1, Fraction(52, 7))
    assert check_hypotheses_with_witnesses(p, 13, 7).valid
    assert check_hypotheses_with_witnesses(p, 2, 7).first_failure == "A2"
    assert check_hypotheses_with_witnesses(p, 13, 3).first_failure == "A699"


@settings(max_examples=200)
@given(st.integers(2, 9), st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=60))
def test_a3_matches_real_inequality(n, A):
    a = choose_a(n)
    mpmath.mp.dps = 60
    Am = mpmath.mpf(A.numerator) / A.denominator
    bound = (mpmath.mpf(2) ** (mpmath.mpf(1) / (n - 1))
             * mpmath.mpf(a / n) ** (-mpmath.mpf(a) / (n - 1))
             * abs(mpmath.mpf(a) / n - 1) ** (-mpmath.mpf(n - a) / (n - 1)))
    if abs(Am - bound) > mpmath.mpf(10) ** -40:
        assert a3_holds(n, a, A) == (Am > bound)


@given(st.integers(2, 8), st.fractions(min_value=Fraction(1, 20), max_value=200, max_denominator=40),
       st.sampled_from([3, 5, 11, 13]))
def test_adding_ramified_prime_only_touches_witness_hypotheses(n, A, q):
    if A == 0:
        return
    a = choose_a(n)
    r0 = check_hypotheses(OdoniParams(n, a, A))
    r1 = check_hypotheses(OdoniParams(n, a, A, {q}))
    for h in ("A3", "A4", "A5", "A6", "A7"):
        assert r0.verdicts[h] == r1.verdicts[h]


def test_min_two_adic_exponent():
    assert min_two_adic_exponent(2) == 5
    assert min_two_adic_exponent(3) == 2
    assert min_two_adic_exponent(4) == 4


def test_search_small():
    found = search_A(3, 1, (), 10 ** 4, 1)
    assert len(found) == 1 and check_hypotheses(OdoniParams(3, 1, found[0][0])).valid
    found = search_A(2, 1, (), 10 ** 4, 10)
    assert Fraction(160, 3) in [A for A, _ in found]


def test_search_respects_ramified_set():
    for A, rep in search_A(3, 1, {13}, 10 ** 5, 3):
        assert rep.p0 != 13 and rep.pinf != 13
        assert A.numerator % 13 == 0


def test_search_rejects_bad_a():
    with pytest.raises(DomainError):
        search_A(9, 1)


def test_perturb():
    assert perturb(Fraction(52, 7), 16, 3) == Fraction(988, 21)
    assert perturb(Fraction(160, 3), 8, 5) == Fraction(416, 3)
    assert abs(perturb(Fraction(52, 7), 16, 10 ** 6) - Fraction(52, 7)) == Fraction(16, 10 ** 6) * Fraction(52, 7)
    with pytest.raises(DomainError):
        perturb(1, 1, 0)
