from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from campana.geometry import (
    DivisorComponent,
    OrbifoldModel,
    ProjectivePoint,
    evaluate,
    linear_form,
    normalize,
    resultant,
    validate_model,
)

from conftest import HALF


@pytest.mark.parametrize("raw,expected", [
    ((4, 6), (2, 3)),
    ((-3, -6), (1, 2)),
    ((0, -5, 10), (0, 1, -2)),
    ((7,), (1,)),
])
def test_normalize(raw, expected):
    assert normalize(raw).coords == expected


def test_normalize_rejects_zero():
    with pytest.raises(ValueError):
        normalize((0, 0))


def test_point_constructor_enforces_canonical_form():
    with pytest.raises(ValueError):
        ProjectivePoint((2, 4))
    with pytest.raises(ValueError):
        ProjectivePoint((-1, 2))
    assert ProjectivePoint((0, 1, -3)).height == 3


coords = st.lists(st.integers(-10**6, 10**6), min_size=2, max_size=4).filter(any)
scalars = st.integers(-1000, 1000).filter(bool)


@given(coords, scalars)
def test_normalize_idempotent_and_scale_invariant(v, lam):
    p = normalize(v)
    assert normalize(p.coords) == p
    assert normalize([lam * c for c in v]) == p


conic = DivisorComponent({(1, 1, 0): 1, (0, 0, 2): -1})


@pytest.mark.parametrize("form,x,value", [
    (linear_form([1, 0]), (8, 9), 8),
    (linear_form([1, -1]), (7, 3), 4),
    (conic, (2, 9, 3), 9),
])
def test_evaluate(form, x, value):
    assert evaluate(form, normalize(x)) == value


def test_evaluate_arity_mismatch():
    with pytest.raises(ValueError):
        evaluate(linear_form([1, 0]), (1, 2, 3))


cubic = DivisorComponent({(3, 0, 0): 2, (1, 1, 1): -5, (0, 1, 2): 7})


@given(st.tuples(*[st.integers(-10**4, 10**4)] * 3), scalars)
def test_evaluate_homogeneous(v, lam):
    assert evaluate(cubic, [lam * c for c in v]) == lam**3 * evaluate(cubic, v)


def test_resultants_by_hand():
    # Sylvester determinants of the pairs of {x0, x0 + x1, x0 - x1}
    a, b, c = linear_form([1, 0]), linear_form([1, 1]), linear_form([1, -1])
    assert resultant(a, b) == 1
    assert resultant(a, c) == -1
    assert resultant(b, c) == -2


def test_resultant_higher_degree():
    # x0^2 + x1^2 and x0 - x1 share no root; Res = f(1, 1) for a monic linear factor
    f = DivisorComponent({(2, 0): 1, (0, 2): 1})
    assert abs(resultant(f, linear_form([1, -1]))) == 2
    g = DivisorComponent({(2, 0): 1, (0, 2): -1})  # (x0 - x1)(x0 + x1)
    assert resultant(g, linear_form([1, -1])) == 0


def test_validate_two_coordinate_lines():
    m = OrbifoldModel(1, [linear_form([1, 0], HALF), linear_form([0, 1], HALF)])
    assert validate_model(m).ok


def test_validate_proportional_pair():
    m = OrbifoldModel(1, [linear_form([1, 0]), linear_form([2, 0])])
    report = validate_model(m)
    assert not report.ok
    assert any("proportional" in v for v in report.violations)


def test_validate_three_points_ok():
    m = OrbifoldModel(1, [linear_form([1, 0]), linear_form([1, 1]), linear_form([1, -1])])
    assert validate_model(m).ok


def test_validate_lists_all_problems():
    m = OrbifoldModel(1, [
        DivisorComponent({(1, 0): 1, (0, 2): 1}),            # not homogeneous
        DivisorComponent({(1, 0): 2, (0, 1): 4}),            # content 2
        linear_form([1, 1], Fraction(3, 2)),                 # weight > 1
        linear_form([1, 0, 0]),                              # wrong arity
    ], s_primes=[4])
    v = " | ".join(validate_model(m).violations)
    for needle in ("not homogeneous", "content 2", "outside [0, 1]", "expected 2", "non-prime 4"):
        assert needle in v


def test_validate_shared_root_on_p1():
    f = DivisorComponent({(2, 0): 1, (0, 2): -1})
    m = OrbifoldModel(1, [f, linear_form([1, 1])])
    assert any("resultant 0" in v for v in validate_model(m).violations)


def test_float_weights_rejected():
    with pytest.raises(TypeError):
        linear_form([1, 0], 0.5)
