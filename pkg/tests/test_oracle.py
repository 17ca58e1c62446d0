import pytest

from campana.geometry import OnBoundaryError, normalize
from campana.oracle import (
    OracleNotApplicable,
    campana_oracle_p1_halves,
    check_applicable,
    cross_validate,
    is_halves_model,
    is_squarefull,
    squarefull_table,
    sunit_oracle,
)

from conftest import lines, model, two_lines


def test_is_squarefull():
    assert [n for n in range(1, 130) if is_squarefull(n)] == [
        1, 4, 8, 9, 16, 25, 27, 32, 36, 49, 64, 72, 81, 100, 108, 121, 125, 128]
    assert is_squarefull(-72)
    assert not is_squarefull(12)


def test_squarefull_table_matches_factorization():
    table = squarefull_table(5000)
    assert [n for n in range(1, 5001) if table[n]] == [n for n in range(1, 5001) if is_squarefull(n)]


def test_halves_oracle_examples():
    assert campana_oracle_p1_halves(normalize((8, 9)))
    assert not campana_oracle_p1_halves(normalize((2, 3)))
    assert campana_oracle_p1_halves(normalize((1, 1)))
    with pytest.raises(OnBoundaryError):
        campana_oracle_p1_halves(normalize((0, 1)))


def test_sunit_oracle():
    m = lines([(1, 0), (0, 1), (1, 1)], weight=0, s_primes=[2, 3])
    assert sunit_oracle(m, normalize((1, 2)))      # 1, 2, 3
    assert not sunit_oracle(m, normalize((1, 4)))  # 1 + 4 = 5
    with pytest.raises(OracleNotApplicable):
        sunit_oracle(two_lines(), normalize((1, 2)))


def test_applicability():
    assert is_halves_model(model("halves"))
    assert not is_halves_model(two_lines(s_primes=[2]))
    with pytest.raises(OracleNotApplicable):
        check_applicable(model("five_lines"), "squarefull")
    with pytest.raises(OracleNotApplicable):
        check_applicable(model("halves"), "nonsense")


def test_cross_validate_examples():
    assert cross_validate(model("halves"), 2000, "squarefull") == []
    zero = model("three_points").with_weights([0, 0, 0]).with_s_primes([2, 5])
    assert cross_validate(zero, 1000, "s-unit") == []
    one = model("five_lines").with_weights([1] * 5)
    assert cross_validate(one, 1000, "constant-true") == []


def test_cross_validate_p2_scalar_path():
    p = model("plane_conic")
    assert cross_validate(p.with_weights([1, 1]), 6, "constant-true") == []
    assert cross_validate(p.with_weights([0, 0]).with_s_primes([2]), 6, "s-unit") == []


def test_cross_validate_reports_disagreements(monkeypatch):
    from campana import oracle
    from campana.predicate import Kind, PointClass
    monkeypatch.setattr(oracle, "is_campana", lambda m, x: PointClass(Kind.NON_CAMPANA, 2))
    bad = cross_validate(model("plane_conic").with_weights([1, 1]), 2, "constant-true")
    assert bad and not any(v.agree for v in bad)
    assert all(v.expected and v.actual is Kind.NON_CAMPANA for v in bad)


def test_applicability_enforced():
    with pytest.raises(OracleNotApplicable):
        cross_validate(two_lines(s_primes=[2]), 50, "squarefull")
