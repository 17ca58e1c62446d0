from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from campana.arith import primes_up_to
from campana.geometry import DivisorComponent, OnBoundaryError, OrbifoldModel, evaluate, normalize
from campana.local import multiplicity, multiplicity_vector, weighted_multiplicity

from conftest import HALF, lines, two_lines


def test_multiplicity_examples():
    m = lines([(1, 0), (1, -1)])
    assert multiplicity(m, normalize((4, 9)), 2, 0) == 2
    assert multiplicity(m, normalize((7, 3)), 2, 1) == 2
    conic = OrbifoldModel(2, [DivisorComponent({(1, 1, 0): 1, (0, 0, 2): -1})])
    # 2*9 - 3^2 = 9 = 3^2
    assert multiplicity(conic, normalize((2, 9, 3)), 3, 0) == 2


def test_multiplicity_on_component_is_an_error():
    m = lines([(1, 0), (1, -1)])
    with pytest.raises(OnBoundaryError):
        multiplicity(m, normalize((0, 1)), 2, 0)


def test_multiplicity_rejects_prime_in_s():
    m = two_lines(s_primes=[2])
    with pytest.raises(ValueError):
        multiplicity(m, normalize((8, 9)), 2, 0)


def test_weighted_multiplicity_examples():
    m = two_lines()
    assert weighted_multiplicity(m, normalize((8, 9)), 2, (HALF, HALF)) == Fraction(3, 2)
    assert weighted_multiplicity(m, normalize((8, 9)), 5, (1, 1)) == 0
    three = lines([(1, 0), (0, 1), (1, -1)])
    # 25 - 16 = 9: half of v_3(9) = 2
    assert weighted_multiplicity(three, normalize((25, 16)), 3, (HALF,) * 3) == 1


def test_zero_weight_component_may_vanish():
    m = two_lines()
    assert weighted_multiplicity(m, normalize((0, 1)), 2, (0, 1)) == 0
    with pytest.raises(OnBoundaryError):
        weighted_multiplicity(m, normalize((0, 1)), 2, (1, 1))


def test_multiplicity_vector():
    v = multiplicity_vector(lines([(1, 0), (0, 1), (1, -1)]), normalize((25, 16)), 2)
    assert v.entries == (0, 4, 0)


fracs = st.fractions(min_value=0, max_value=3, max_denominator=12)
pts = st.tuples(st.integers(1, 5000), st.integers(-5000, 5000)).filter(lambda t: t[1] != 0 and t[0] != -t[1] and t[0] != t[1])


@given(pts, st.lists(fracs, min_size=3, max_size=3), st.lists(fracs, min_size=3, max_size=3),
       st.sampled_from([2, 3, 5, 7]))
def test_weighted_multiplicity_additive(raw, a, b, p):
    m = lines([(1, 0), (0, 1), (1, -1)])
    x = normalize(raw)
    ab = [u + v for u, v in zip(a, b)]
    assert weighted_multiplicity(m, x, p, ab) == (
        weighted_multiplicity(m, x, p, a) + weighted_multiplicity(m, x, p, b))


def test_finite_support_by_exhaustive_scan():
    m = lines([(1, 0), (1, 1), (2, -3)])
    for raw in [(5, 7), (12, 35), (1, 1), (49, -9)]:
        x = normalize(raw)
        for i, c in enumerate(m.components):
            v = abs(evaluate(c, x))
            for p in primes_up_to(3 * v + 10):
                if p > v:
                    assert multiplicity(m, x, p, i) == 0


@given(pts, st.integers(-50, 50).filter(bool))
def test_scaling_invariance(raw, lam):
    m = lines([(1, 0), (0, 1), (1, -1)])
    a = normalize(raw)
    b = normalize((lam * raw[0], lam * raw[1]))
    for p in (2, 3, 5):
        assert multiplicity_vector(m, a, p) == multiplicity_vector(m, b, p)
