from __future__ import annotations

import math
from dataclasses import replace

import pytest

from quadtile.angles import DomainError
from quadtile.geometry import (
    Degeneracy,
    IdentityViolated,
    NotRealizable,
    RhombusDegenerate,
    Shape,
    TileKind,
    a2bc_terms,
    alpha_delta_squared_residual,
    alpha_delta_squared_roots,
    closure_residual,
    complete_a3b,
    coolsaet_residual,
    cos_a_expressions,
    earth_map_edges,
    realize_a2bc,
    realize_a3b,
    simplicity_check,
    solve_free_angle,
)
from quadtile.geometry_tables import EARTH_MAP_TABLE, GEOMETRY_TABLE, record
from quadtile.vertices import V

PI = math.pi


def _realize(rec, t):
    angles = rec.angle_values(t)
    if rec.tile_kind is TileKind.A3B:
        return realize_a3b(*angles)
    return realize_a2bc(*angles, rec.edge_values(t)["a"])


def test_coolsaet_examples():
    assert coolsaet_residual(PI, PI / 2, PI / 2, PI / 4) == pytest.approx(0, abs=1e-15)
    d = math.acos((1 - math.sqrt(3) / 3) / 2)
    assert abs(coolsaet_residual(2 * PI / 3, PI - d, PI / 2, d)) < 1e-12
    # sin(pi/4) sin(pi/12) - sin(pi/4) sin(pi/4)
    want = math.sin(PI / 4) * (math.sin(PI / 12) - math.sin(PI / 4))
    assert coolsaet_residual(PI / 2, PI / 2, PI / 2, PI / 3) == pytest.approx(want, abs=1e-15)


@pytest.mark.parametrize("rec", GEOMETRY_TABLE, ids=lambda r: r.name)
def test_table_geometry_realises_closed_forms(rec):
    for t in rec.samples:
        g = _realize(rec, t)
        for name, value in rec.edge_values(t).items():
            assert getattr(g, name) == pytest.approx(value, abs=1e-9), (rec.name, name)
        assert g.closure < 1e-9
        for shift in range(1, 8):
            assert closure_residual(g, shift) < 1e-9
        assert simplicity_check(g).simple


def test_cos_a_expressions_agree():
    for rec in GEOMETRY_TABLE:
        if rec.tile_kind is not TileKind.A3B:
            continue
        e1, e2 = cos_a_expressions(*rec.angle_values(0.0))
        if e1 is not None and e2 is not None:
            assert abs(e1 - e2) < 1e-10, rec.name


def test_a2bc_sine_cosine_identity():
    for rec in GEOMETRY_TABLE:
        for t in rec.samples:
            angles = rec.angle_values(t)
            a = rec.edge_values(t)["a"]
            terms = a2bc_terms(*angles, a)
            if abs(terms.existence) > 1e-9:
                continue
            s2 = math.sin(angles[2]) ** 2
            assert terms.cos_b**2 + terms.sin_b**2 == pytest.approx(s2, abs=1e-10)


def test_s2_and_s5_edges():
    g = _realize(record("S2"), 0)
    assert g.a / PI == pytest.approx(0.33, abs=5e-3)
    assert g.b / PI == pytest.approx(0.12, abs=5e-3)
    g = _realize(record("S5"), 0)
    assert (round(g.a / PI, 2), round(g.b / PI, 2)) == (0.17, 0.26)


def test_s3_is_a_triangle():
    g = realize_a3b(PI, PI / 2, PI / 2, PI / 4)
    assert g.degeneracy is Degeneracy.TRIANGLE_ALPHA_PI
    assert g.a == pytest.approx(PI / 4)
    assert g.b == pytest.approx(PI / 2)


def test_qp6_family_kite_at_right_angle():
    rec = record("QP6 family")
    g = _realize(rec, PI / 2)
    assert g.degeneracy is Degeneracy.KITE
    assert g.b == pytest.approx(PI / 4) and g.edge_c == pytest.approx(PI / 4)


def test_qp6_prime_edges():
    g = realize_a2bc(2 * PI / 3, 2 * PI / 3, PI / 2, PI / 3, math.acos(math.sqrt(5) / 3))
    assert g.b == pytest.approx(math.acos((math.sqrt(5) - 1) / (2 * math.sqrt(3))), abs=1e-12)
    assert g.c == pytest.approx(math.acos((math.sqrt(5) + 1) / (2 * math.sqrt(3))), abs=1e-12)


def test_e_square5_at_16():
    g = _realize(record("E_square5"), 16)
    assert math.cos(g.b) == pytest.approx((math.sqrt(5) - 1) / 4 / math.cos(PI / 4), abs=1e-12)


def test_closure_detects_perturbation():
    g = _realize(record("S4"), 0)
    assert closure_residual(replace(g, b=g.b + 1e-3)) > 1e-4


def test_realize_errors():
    with pytest.raises(IdentityViolated):
        realize_a3b(PI / 2, PI / 2, PI / 2, PI / 3)
    with pytest.raises(NotRealizable):
        realize_a3b(PI / 2, PI / 2, PI / 2, PI / 2)
    with pytest.raises(NotRealizable):
        realize_a2bc(2 * PI / 3, 2 * PI / 3, PI / 2, PI / 3, 0.3)
    with pytest.raises(DomainError):
        realize_a2bc(2 * PI / 3, 2 * PI / 3, PI, PI / 3, 0.3)


def test_rhombus_is_rejected():
    # an equilateral tile: alpha = gamma, beta = delta
    a, b = 0.6 * PI, 0.55 * PI
    with pytest.raises((RhombusDegenerate, NotRealizable)):
        realize_a3b(a, b, a, b)


def test_reflex_shape():
    alpha = 1.2 * PI
    beta = 4 * PI / 24
    e = earth_map_edges(alpha, beta)
    gamma, delta, b = complete_a3b(alpha, beta, e.a)
    g = realize_a3b(alpha, beta, gamma, delta)
    assert g.shape is Shape.ALPHA_REFLEX
    assert g.b == pytest.approx(e.b, abs=1e-9)


def test_earth_map_edges_match_completion():
    for alpha in (0.6 * PI, 0.75 * PI, 0.9 * PI, 1.1 * PI):
        beta = PI / 6
        e = earth_map_edges(alpha, beta)
        gamma, delta, b = complete_a3b(alpha, beta, e.a)
        assert alpha + gamma + delta == pytest.approx(2 * PI, abs=1e-9)
        assert b == pytest.approx(e.b, abs=1e-9)


def test_earth_map_degeneracies():
    assert earth_map_edges(PI, PI / 4).degeneracy is Degeneracy.TRIANGLE_ALPHA_PI
    assert earth_map_edges(0.75 * PI, PI / 4).degeneracy is Degeneracy.TRIANGLE_GAMMA_PI
    with pytest.raises(DomainError):
        earth_map_edges(0.4 * PI, PI / 4)


def test_free_angle_roots():
    (r12,) = alpha_delta_squared_roots(12)
    assert math.cos(r12.x) == pytest.approx(-math.sqrt(10) / 4, abs=1e-12)
    (r16,) = alpha_delta_squared_roots(16)
    assert r16.x / PI == pytest.approx(0.7898, abs=1e-4)
    assert alpha_delta_squared_roots(20) == []
    for r in (r12, r16):
        assert abs(alpha_delta_squared_residual(int(round(12 if r is r12 else 16)))(r.x)) < 1e-11


def test_solve_free_angle_no_bracket():
    assert solve_free_angle(lambda x: 1.0 + x * x, -1, 1) == []
    roots = solve_free_angle(math.sin, -1, 7)
    assert [round(r.x, 12) for r in roots] == [0.0, round(PI, 12), round(2 * PI, 12)]


def test_earth_map_rows_count_consistently():
    for f in range(6, 61, 2):
        for row in EARTH_MAP_TABLE:
            for n in row.instances(f):
                vs = [(c, V(t)) for c, t in row.vertices(f, n)]
                assert sum(c for c, _ in vs) == f + 2
                assert [sum(c * v[i] for c, v in vs) for i in range(4)] == [f] * 4
