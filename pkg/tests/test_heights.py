import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from campana.geometry import DivisorComponent, OrbifoldModel, normalize
from campana.heights import (
    LogSum,
    bigness_margin,
    counting_N,
    counting_N1,
    divisor_height,
    height_constant,
    lemma_chain,
    log_canonical_degree,
    vojta_gap,
    weil_height,
)

from conftest import HALF, lines, two_lines

L = LogSum.log


def test_counting_N_examples():
    m = lines([(1, 0)], weight=1)
    x = normalize((12, 5))
    assert counting_N(m, x) == L(2, 2) + L(3)
    assert counting_N(m, x) == L(12)
    assert counting_N(m.with_s_primes([2]), x) == L(3)
    assert counting_N(two_lines(), normalize((8, 9))) == L(2, Fraction(3, 2)) + L(3)


def test_counting_N1_examples():
    m = lines([(1, 0)], weight=1)
    assert counting_N1(m, normalize((12, 5))) == L(6)
    assert counting_N1(m, normalize((1, 5))).is_zero()
    assert counting_N1(two_lines(), normalize((8, 9))) == L(2) + L(3)


def test_weil_height_examples():
    assert weil_height(normalize((3, 4))) == L(4)
    assert weil_height(normalize((1, 0))).is_zero()
    assert weil_height(normalize((8, 9))) == L(9)


def test_divisor_height_examples():
    assert divisor_height(two_lines(), normalize((8, 9))) == L(9)
    conic = OrbifoldModel(2, [DivisorComponent({(1, 1, 0): 1, (0, 0, 2): -1}, 1)])
    assert divisor_height(conic, normalize((1, 1, 1))).is_zero()
    five = lines([(1, 0), (0, 1), (1, 1), (1, -1), (1, -2)], weight=1)
    assert divisor_height(five, normalize((3, 4))) == L(4, 5)


def test_bigness_margin_examples():
    assert bigness_margin(two_lines()) == -1
    assert bigness_margin(lines([(1, 0), (0, 1), (1, 1), (1, -1), (1, -2)])) == HALF
    assert bigness_margin(two_lines((0, 0))) == 0


def test_vojta_gap_examples():
    assert vojta_gap(two_lines(), normalize((8, 9))) == pytest.approx(math.log(6), abs=1e-12)
    five = lines([(1, 0), (0, 1), (1, 1), (1, -1), (1, -2)])
    # N1 = log 2 + log 3, deg K(D) = 3, h = log 2: log 6 - 3 log 2
    assert vojta_gap(five, normalize((1, 2))) == pytest.approx(math.log(6 / 8), abs=1e-12)
    assert vojta_gap(five, normalize((1, 2)), Fraction(1, 10)) == pytest.approx(
        math.log(6 / 8) + 0.1 * math.log(2), abs=1e-12)


def test_vojta_gap_empty_support():
    m = lines([(1, 0), (0, 1), (1, -1)])
    x = normalize((2, 1))  # values 2, 1, 1
    m = m.with_s_primes([2])
    assert vojta_gap(m, x) == pytest.approx(-log_canonical_degree(m) * math.log(2))


def test_vojta_gap_rejects_float_delta():
    with pytest.raises(TypeError):
        vojta_gap(two_lines(), normalize((8, 9)), 0.1)


def test_logsum_canonical_equality():
    assert L(12) == L(2, 2) + L(3)
    assert L(6) - L(2) - L(3) == LogSum()
    assert hash(L(12)) == hash(L(4) + L(3))
    assert L(1).is_zero()


def test_logsum_exact_sign():
    # 2^10 = 1024 > 10^3 but float-close pairs must still be ordered exactly
    assert L(2, 10) > L(10, 3)
    assert (L(3, 665) - L(2, 1054)).sign() == 1  # 3^665 just above 2^1054
    assert (L(2, 1054) - L(3, 665)).sign() == -1
    assert L(2, Fraction(1, 2)) < L(3, Fraction(1, 2))
    assert (L(8, Fraction(1, 3)) - L(2)).sign() == 0


def test_logsum_float():
    assert float(L(2, Fraction(3, 2)) + L(3)) == pytest.approx(1.5 * math.log(2) + math.log(3))


forms = [DivisorComponent({(1, 0): 1}), DivisorComponent({(1, 0): 1, (0, 1): -3}),
         DivisorComponent({(2, 0): 1, (1, 1): 1, (0, 2): 1})]
pts = st.tuples(st.integers(1, 10**6), st.integers(1, 10**6))


@given(pts, st.sampled_from(forms))
def test_product_formula(raw, form):
    x = normalize(raw)
    m = OrbifoldModel(1, [form.with_weight(1)])
    from campana.geometry import evaluate
    v = evaluate(form, x)
    if v == 0:
        return
    n = counting_N(m, x)
    assert n == L(abs(v))
    assert abs(float(n) - math.log(abs(v))) <= 1e-9


@given(pts)
def test_lemma_chain_on_campana_points(raw):
    m = lines([(1, 0), (0, 1), (1, 1)], weight=HALF)
    x = normalize(raw)
    if any(v == 0 for v in (x.coords[0], x.coords[1], sum(x.coords))):
        return
    c = lemma_chain(m, x)
    assert c["second_holds"]


def test_height_constant():
    m = lines([(1, 0), (1, -2)], weight=HALF)
    assert height_constant(m) == L(3, HALF)
