from __future__ import annotations

import math
from fractions import Fraction

import pytest

from quadtile.angles import (
    AngleExpr,
    DomainError,
    RangeError,
    eval_angle,
    evaluate_formula,
    format_affine,
    parse_angle,
    recalibrate,
)


def test_exact_affine_value():
    a = AngleExpr.exact("4/3", "-4/3")
    assert a.pi_units(10) == Fraction(4, 3) - Fraction(4, 30)
    assert a.radians(10) == pytest.approx(float(Fraction(6, 5)) * math.pi)
    assert str(a) == "4/3 - 4/(3f)"


def test_family_needs_f():
    with pytest.raises(DomainError):
        AngleExpr.exact(0, 4).radians()


def test_numeric_needs_provenance():
    with pytest.raises(DomainError):
        AngleExpr.numeric(1.0, "")
    with pytest.raises(DomainError):
        AngleExpr.numeric(float("nan"), "x")


def test_json_round_trip():
    for a in (AngleExpr.exact("2/3"), AngleExpr.exact(0, 4), AngleExpr.numeric(1.25, "acos(0.3)")):
        assert AngleExpr.from_json(a.to_json()) == a


def test_json_rejects_extra_fields():
    with pytest.raises(DomainError):
        AngleExpr.from_json({"c0": "1", "c1": "0", "x": 1})
    with pytest.raises(DomainError):
        AngleExpr.from_json({"value": "1.0"})


def test_eval_angle_checks_f_and_range():
    assert eval_angle(AngleExpr.exact(0, 4), 8).pi_units == Fraction(1, 2)
    with pytest.raises(DomainError):
        eval_angle(AngleExpr.exact(1), 7)
    with pytest.raises(DomainError):
        eval_angle(AngleExpr.exact(1), 4)
    with pytest.raises(RangeError):
        eval_angle(AngleExpr.exact(2), 8)
    with pytest.raises(RangeError):
        eval_angle(AngleExpr.exact(0, -4), 8)


def test_recalibrate_exact():
    r = recalibrate(Fraction(5, 4))
    # sin(5pi/4) = -sin(pi/4)
    assert (r.reduced, r.sign, r.reflected) == (Fraction(1, 4), -1, False)
    r = recalibrate(Fraction(2, 3))
    assert (r.reduced, r.sign, r.reflected) == (Fraction(1, 3), 1, True)


@pytest.mark.parametrize("x", [0.1, 1.7, 2.9, 4.0, 5.5, -0.7, 9.3])
def test_recalibrate_float_preserves_sine(x):
    r = recalibrate(x)
    assert 0 <= r.reduced <= math.pi / 2
    assert r.sign * math.sin(r.reduced) == pytest.approx(math.sin(x), abs=1e-12)


def test_parse_angle():
    assert parse_angle("1/2") == AngleExpr.exact(Fraction(1, 2))
    assert parse_angle("0.25").pi_units(8) == Fraction(1, 4)
    a = parse_angle("acos(sqrt(10)/4)")
    assert not a.is_exact
    assert a.radians() == pytest.approx(math.acos(math.sqrt(10) / 4))


def test_formula_rejects_names():
    with pytest.raises(DomainError):
        evaluate_formula("__import__('os')")
    with pytest.raises(DomainError):
        evaluate_formula("1 +")


def test_format_affine():
    assert format_affine(Fraction(0), Fraction(4)) == "4/f"
    assert format_affine(Fraction(1), Fraction(-4)) == "1 - 4/f"
    assert format_affine(Fraction(2, 3), Fraction(0)) == "2/3"
