from __future__ import annotations

import pytest

from quadtile.angles import DomainError
from quadtile.patterns import P, eval_f_expr, pattern_choices, patterns, set_within
from quadtile.vertices import V


def test_parse_forms():
    assert P("b^(f/2)").specs == (0, "f/2", 0, 0)
    assert P("a^m b^n").specs == ("m", "n", 0, 0)
    assert P("agd").is_fixed
    with pytest.raises(DomainError):
        P("a2a")


def test_instantiate_and_defined_at():
    p = P("a b^((f+2)/6)")
    assert p.instantiate(16).specs == (1, 3, 0, 0)
    assert not p.defined_at(18)
    assert eval_f_expr("(f-4)/6", 22) == 3


def test_matches_with_shared_symbol():
    p = P("a^m b^m")
    assert p.matches(V("a2b2"))
    assert not p.matches(V("a2b3"))
    assert not p.matches(V("g2"))
    assert P("b^n g d").matches(V("b5gd"))
    assert P("b^(f/2)").matches(V("b5"), 10)


def test_within():
    assert P("a3").within(P("a^m"))
    assert P("a b^n").within(P("a^m b^n"))
    assert not P("a^m").within(P("a3"))
    assert set_within(patterns("agd, a3"), patterns("agd, a^m, b^n g d"))


def test_pattern_choices_distinct():
    got = pattern_choices(patterns("agd, b^n g d"), [V("agd"), V("b2gd"), V("b3gd")], 12)
    assert got == [(V("agd"), V("b2gd")), (V("agd"), V("b3gd"))]


def test_labels():
    assert P("a^m b^n").label() == "αᵐβⁿ"
    assert P("b^(f/2)").label() == "β^(f/2)"
