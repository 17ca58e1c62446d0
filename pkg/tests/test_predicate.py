from fractions import Fraction

import pytest

from campana.enumeration import points_up_to
from campana.geometry import normalize
from campana.oracle import campana_oracle_p1_halves
from campana.predicate import Kind, is_campana, support_primes

from conftest import HALF, lines, two_lines


def test_support_primes_examples():
    assert support_primes(two_lines(), normalize((8, 9))) == (2, 3)
    assert support_primes(two_lines(), normalize((1, 1))) == ()
    assert support_primes(two_lines(s_primes=[2]), normalize((8, 9))) == (3,)


def test_is_campana_examples():
    m = two_lines()
    c = is_campana(m, normalize((8, 9)))
    assert c.kind is Kind.CAMPANA
    assert c.table[2][1] == Fraction(3, 2) and c.table[3][1] == 1
    c = is_campana(m, normalize((2, 3)))
    assert c.kind is Kind.NON_CAMPANA and c.witness == 2
    assert is_campana(m, normalize((1, -1))).kind is Kind.INTEGRAL
    c = is_campana(m, normalize((0, 5)))
    assert c.kind is Kind.ON_BOUNDARY and c.component == 0


def test_examples_agree_with_squarefull_oracle():
    m = two_lines()
    for raw in [(8, 9), (2, 3), (1, 1), (72, -25), (4, 27), (12, 1)]:
        x = normalize(raw)
        assert is_campana(m, x).satisfies_condition == campana_oracle_p1_halves(x)


def test_tie_at_exactly_one_is_campana():
    # v_3(9) = 2 with weight 1/2 gives exactly 1
    m = two_lines()
    assert is_campana(m, normalize((1, 9))).kind is Kind.CAMPANA


def test_unit_weights_accept_everything():
    m = lines([(1, 0), (0, 1), (1, 1), (1, -2)], weight=1)
    for x in points_up_to(1, 30):
        c = is_campana(m, x)
        assert c.kind is Kind.ON_BOUNDARY or c.satisfies_condition


def test_zero_weights_mean_s_integral():
    m = lines([(1, 0), (0, 1), (1, 1)], weight=0, s_primes=[2, 3])
    for x in points_up_to(1, 30):
        c = is_campana(m, x)
        if c.kind is Kind.ON_BOUNDARY:
            continue
        assert c.satisfies_condition == (support_primes(m, x) == ())
        assert c.kind is not Kind.CAMPANA


def test_witness_is_smallest_violating_prime():
    m = two_lines()
    c = is_campana(m, normalize((2 * 9, 5 * 7)))
    assert c.kind is Kind.NON_CAMPANA and c.witness == 2
