from __future__ import annotations

from fractions import Fraction

import pytest

from kummer_forms.expressions import ConicRelation
from kummer_forms.scalars import (
    DomainError,
    UnboundSymbolError,
    check_identity,
    format_scalar,
    parse_scalar,
    random_rational_point,
    rational_points,
    relative_residual,
    sqrt_exact,
    sqrt_scalar,
    to_exact,
)


def test_to_exact_parses_strings_and_ints():
    assert to_exact("3/6") == Fraction(1, 2)
    assert to_exact(4) == Fraction(4)
    with pytest.raises(DomainError):
        to_exact("1/0")
    with pytest.raises(DomainError):
        to_exact(1.5)


def test_sqrt_exact_only_for_squares():
    assert sqrt_exact(Fraction(9, 49)) == Fraction(3, 7)
    assert sqrt_exact(Fraction(2)) is None
    with pytest.raises(DomainError):
        sqrt_scalar(Fraction(3))
    assert abs(sqrt_scalar(-4 + 0j) - 2j) < 1e-15


def test_format_round_trip():
    for v in (Fraction(-7, 3), 2 - 1j):
        assert parse_scalar(format_scalar(v)) == v
    assert format_scalar(Fraction(5)) == "5"


def test_random_points_are_reproducible_and_admissible():
    a = random_rational_point(3, 4, 100)
    assert a == random_rational_point(3, 4, 100)
    assert len(set(a)) == 4 and 0 not in a and 1 not in a
    pts = rational_points(1, 10, 3, 50)
    assert all(abs(x.numerator) <= 50 and x.denominator <= 50 for p in pts for x in p)
    with pytest.raises(DomainError):
        random_rational_point(0, 2, 3)


def test_relative_residual_is_scale_free():
    assert relative_residual([1e10, -1e10 + 1]) == pytest.approx(1e-10)
    assert relative_residual([0, 0]) == 0.0


def test_check_identity_exact_and_numeric():
    rel = ConicRelation("sq", "T1*T1 - T2", "tropes")
    ok = check_identity(rel, [{"T1": Fraction(3), "T2": Fraction(9)}])
    assert ok.passed and ok.domain == "exact" and ok.max_residual == 0
    bad = check_identity(rel, {"T1": Fraction(3), "T2": Fraction(8)})
    assert not bad.passed and bad.witness is not None
    near = check_identity(rel, {"T1": 3 + 0j, "T2": 9 + 1e-12j}, tolerance=1e-9)
    assert near.passed and near.domain == "numeric"
    with pytest.raises(UnboundSymbolError):
        check_identity(rel, {"T1": Fraction(1)})
