from __future__ import annotations

from fractions import Fraction

import pytest
from oracles import RankOracle

from quadtile.diophantine import (
    AngleSumSystem,
    DegeneratePair,
    agd_case,
    classify_nonrational,
    nonrationality_conditions,
    solve_vertex_families,
)
from quadtile.pairs import PAIRS, CandidatePair, find_pair
from quadtile.patterns import P
from quadtile.vertices import V


def test_conditions_for_alpha_delta2_beta_gamma2():
    c = nonrationality_conditions(find_pair("ad2", "bg2"))
    assert c.lam == (2, -2, 1, -1)
    # (m - n + k - 1) f + (4n - 2k) = 0, half of 2(m+k-n-1) + (4/f)(2n-k) = 0 times f
    for x in [(3, 3, 0, 0), (1, 0, 0, 2), (0, 1, 2, 0), (2, 1, 0, 3)]:
        for f in (8, 12, 20):
            lam = 2 * x[0] - 2 * x[1] + x[2] - x[3]
            mu = 2 * (x[0] + x[2] - x[1] - 1) + Fraction(4, f) * (2 * x[1] - x[2])
            assert c.holds(x, f) == (lam == 0 and mu == 0)


def test_conditions_for_alpha_beta2_gamma2_delta2():
    c = nonrationality_conditions(find_pair("ab2", "g2d2"))
    assert c.lam == (0, 0, 1, -1)
    # (2 - n - k) f = 4 (2m - n)
    for x in [(4, 1, 0, 0), (3, 0, 1, 1), (2, 2, 0, 0), (5, 0, 0, 0)]:
        for f in (16, 20, 24):
            want = x[2] == x[3] and (2 - x[1] - x[2]) * f == 4 * (2 * x[0] - x[1])
            assert c.holds(x, f) == want


def test_conditions_match_rank_deficiency():
    pair = find_pair("a3", "g4")
    c = nonrationality_conditions(pair)
    system = AngleSumSystem(pair.first, pair.second)
    import numpy as np

    for x in [(3, 0, 0, 0), (0, 2, 0, 2), (0, 0, 4, 0), (1, 1, 1, 1), (0, 2, 2, 0)]:
        aug = np.array(system.augmented(x, 24), dtype=float)
        rank_ok = np.linalg.matrix_rank(aug[:, :4]) == np.linalg.matrix_rank(aug) <= 3
        assert c.holds(x, 24) == rank_ok, x


def test_degenerate_pair():
    with pytest.raises(DegeneratePair):
        nonrationality_conditions(CandidatePair(V("a3"), V("a3"), True, 24))


def test_alpha_delta2_family_has_alpha_m_beta_m_ray():
    fam = solve_vertex_families(nonrationality_conditions(find_pair("ad2", "bg2")), 8)
    assert set(fam.any_f) == {V("ad2"), V("bg2")}
    assert [p.label() for p in fam.ray_patterns()] == ["αᵐβᵐ"]
    assert fam.instantiate(12) == {V("ad2"), V("bg2"), V("a3b3")}


def test_alpha_beta2_families():
    fam = solve_vertex_families(nonrationality_conditions(find_pair("ab2", "g2d2")), 16)
    assert set(fam.ray_patterns()) == {P("a^m"), P("a^m b"), P("a^m g d")}


@pytest.mark.parametrize("f", [16, 24, 30])
def test_families_match_rank_oracle_small_bound(f):
    for pair in PAIRS[:12]:
        fam = solve_vertex_families(nonrationality_conditions(pair), 6)
        got = {v for v in fam.instantiate(f) if max(v) <= 20}
        assert got == RankOracle(pair.first, pair.second, bound=20).at(f), (pair, f)


def test_table_rows_at_single_f():
    res = classify_nonrational(24)
    labels = {r.label() for r in res.without_agd}
    assert "f=24 {α³, β²δ², γ⁴}" in labels
    assert "f>=16 {αγ², β²δ², αᵐ}" in labels
    assert all(r.f in (None, 24) for r in res.without_agd)


def test_agd_branch_gamma_delta_nonrational():
    case = agd_case("gd")
    assert set(case.avc) == {P("agd"), P("a^m"), P("a^m b^n"), P("b^n"), P("b^n g^k d^k"), P("g^k d^k")}


def test_classify_rejects_odd_f():
    with pytest.raises(ValueError):
        classify_nonrational(9)
