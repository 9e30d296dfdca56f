"""Acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
and asserts the same condition.  Reference values are transcribed from the
published tables.
"""

from __future__ import annotations

import json
import math
import random
import time
from collections import Counter
from dataclasses import replace
from fractions import Fraction

import numpy as np
from conftest import ACCEPTANCE_LINES
from oracles import RankOracle, flip_for, vertex_loop

from quadtile.catalog import (
    EARTH_MAP_SHAPES,
    NONRATIONAL_AGD_TABLE,
    NONRATIONAL_TABLE,
    RATIONAL_AGD_TABLE,
    RATIONAL_TABLE,
)
from quadtile.cli import main
from quadtile.diophantine import classify_nonrational, nonrationality_conditions, solve_vertex_families
from quadtile.geometry import (
    TileKind,
    alpha_delta_squared_roots,
    closure_product,
    closure_residual,
    complete_a3b,
    earth_map_edges,
    realize_a2bc,
    realize_a3b,
)
from quadtile.geometry_tables import EARTH_MAP_TABLE, GEOMETRY_TABLE, record
from quadtile.pairs import PAIRS
from quadtile.patterns import VertexPattern
from quadtile.rational import classify_rational, myerson_self_check, realized_rows
from quadtile.tilings import (
    FIXTURES,
    Tile,
    canonical_code,
    classify_minimal,
    generate_earth_map,
    load_fixture,
    load_tiling,
    verify_tiling,
)
from quadtile.vertices import V, VertexFilter, enumerate_vertices

PI = math.pi


def verdict(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)


def _realize(rec, t):
    angles = rec.angle_values(t)
    if rec.tile_kind is TileKind.A3B:
        return realize_a3b(*angles)
    return realize_a2bc(*angles, rec.edge_values(t)["a"])


# Printed "≈ x.xx π" entries of the isolated tilings.
PRINTED = {
    "S1_12": {"a": 0.34, "b": 0.25, "alpha": 0.42, "gamma": 0.46, "delta": 0.80},
    "S1_16": {"a": 0.34, "b": 0.11, "alpha": 0.42, "gamma": 0.54, "delta": 0.79},
    "S2": {"a": 0.33, "b": 0.12, "beta": 0.43, "delta": 0.57},
    "S4": {"b": 0.35, "gamma": 0.41, "delta": 0.59},
    "QP6": {"a": 0.20, "b": 0.30, "beta": 0.57, "delta": 0.43},
    "S5": {"a": 0.17, "b": 0.26},
    "S6": {"a": 0.23, "b": 0.12},
}
# Exact entries, in units of pi.
EXACT = {
    "S1_12": {"beta": Fraction(2, 3)},
    "S1_16": {"beta": Fraction(1, 2)},
    "S2": {"alpha": Fraction(1, 2), "gamma": Fraction(3, 4)},
    "S3": {"a": Fraction(1, 4), "b": Fraction(1, 2), "alpha": Fraction(1), "beta": Fraction(1, 2),
           "gamma": Fraction(1, 2), "delta": Fraction(1, 4)},
    "S4": {"a": Fraction(1, 4), "alpha": Fraction(1, 2), "beta": Fraction(3, 4)},
    "QP6": {"alpha": Fraction(2, 3), "gamma": Fraction(1, 2)},
    "S5": {"alpha": Fraction(4, 9), "beta": Fraction(7, 9), "gamma": Fraction(1, 3), "delta": Fraction(5, 9)},
    "S6": {"alpha": Fraction(1, 3), "beta": Fraction(5, 9), "gamma": Fraction(7, 18), "delta": Fraction(5, 6)},
}
# S1 at f=12: delta = pi - acos(sqrt(10)/4) = 0.79022 pi.  The table prints 0.80,
# while the root of the same tile elsewhere is printed as 0.7902.
MISPRINTS = {("S1_12", "delta"): 0.7902}


def _earth_edges(f: int):
    """Earth map rows at f: (largest deviation from the closed forms, largest closure residual, count)."""
    dev = res = 0.0
    count = 0
    beta = 4 * PI / f
    for row in EARTH_MAP_TABLE:
        for n in row.instances(f):
            alpha = float(row.alpha(f, n)) * PI
            gd = float(row.gamma_delta(f, n)) * PI
            e = earth_map_edges(alpha, beta)
            ca = math.cos(alpha)
            a = math.acos(ca / (ca - 1))
            b = math.acos(((2 * ca - 1) * math.cos(alpha + beta) - ca**2) / (1 - ca) ** 2)
            gamma, delta, b_walk = complete_a3b(alpha, beta, e.a)
            dev = max(dev, abs(e.a - a), abs(e.b - b), abs(b_walk - b), abs(gamma + delta - gd))
            p = closure_product(alpha, beta, gamma, delta, e.a, b, e.a)
            res = max(res, float(np.abs(p - np.eye(3)).max()))
            count += 1
    return dev, res, count


EARTH_FS = range(10, 34, 2)


def test_criterion_01_table_values():
    t0 = time.perf_counter()
    misses, misprints, closed = [], [], 0.0
    for rec in GEOMETRY_TABLE:
        for t in rec.samples:
            g = _realize(rec, t)
            for name, value in rec.edge_values(t).items():
                closed = max(closed, abs(getattr(g, name) - value))
        if rec.name in PRINTED or rec.name in EXACT:
            g = _realize(rec, rec.samples[0])
            for name, want in PRINTED.get(rec.name, {}).items():
                got = getattr(g, name) / PI
                if (rec.name, name) in MISPRINTS:
                    misprints.append((rec.name, name, want, round(got, 5)))
                    if abs(got - want) < 5e-3 or abs(got - MISPRINTS[rec.name, name]) >= 5e-5:
                        misses.append((rec.name, name, want, got))
                elif abs(got - want) >= 5e-3:
                    misses.append((rec.name, name, want, got))
            for name, want in EXACT.get(rec.name, {}).items():
                closed = max(closed, abs(getattr(g, name) - float(want) * PI))
    for f in EARTH_FS:
        dev, _, _ = _earth_edges(f)
        closed = max(closed, dev)
    elapsed = time.perf_counter() - t0
    ok = not misses and closed < 1e-9 and elapsed < 1.0
    n_printed = sum(len(d) for d in PRINTED.values())
    slips = "; ".join(f"{n} {q} printed {w}, computed {g}" for n, q, w, g in misprints)
    verdict(1, ok, f"{n_printed - len(misprints)}/{n_printed} printed values within 5e-3 pi "
                   f"(rounding misprint: {slips}), closed forms within {closed:.1e}, {elapsed:.2f} s")
    assert ok, misses


def test_criterion_02_closure():
    worst = 0.0
    for rec in GEOMETRY_TABLE:
        for t in rec.samples:
            g = _realize(rec, t)
            worst = max(worst, *(closure_residual(g, s) for s in range(8)))
    n_earth = 0
    for f in EARTH_FS:
        _, res, count = _earth_edges(f)
        worst = max(worst, res)
        n_earth += count
    ok = worst < 1e-9
    verdict(2, ok, f"largest rotation product residual {worst:.1e} over {len(GEOMETRY_TABLE)} tables "
                   f"and {n_earth} earth map instances")
    assert ok


CENSUS_FS = [*range(8, 66, 2), 84, 132]
# Rows realised by some counting-feasible angle set, per f (computed once and frozen).
REALISED_AGD = {8: [0], 10: [0, 1, 3, 4], 12: [0, 1, 2], 18: [0, 1, 3], 20: [0, 1], 30: [0]}


def test_criterion_03_rational_census():
    expected: dict[int, set] = {}
    for row in RATIONAL_TABLE:
        expected.setdefault(row.f, set()).add(row.fixed_set())
    problems, slowest = [], 0.0
    for f in CENSUS_FS:
        t0 = time.perf_counter()
        res = classify_rational(f)
        slowest = max(slowest, time.perf_counter() - t0)
        got = {r.vertices for r in res}
        if got != expected.get(f, set()):
            problems.append(("census", f))
        for r in res:
            row = next(x for x in RATIONAL_TABLE if x.f == f and x.fixed_set() == r.vertices)
            if row.counting_infeasible and r.feasible:
                problems.append(("feasibility", f))
    for f, idx in REALISED_AGD.items():
        t0 = time.perf_counter()
        got = realized_rows(f)
        slowest = max(slowest, time.perf_counter() - t0)
        if [RATIONAL_AGD_TABLE.index(r) for r in got] != idx or not all(r.applies_at(f) for r in got):
            problems.append(("agd", f))
    ok = not problems and slowest < 10
    verdict(3, ok, f"{len(RATIONAL_TABLE)} rows over f in 8..64, 84, 132; f=20 counting-infeasible; "
                   f"earth map rows at {sorted(REALISED_AGD)}; slowest f {slowest:.1f} s")
    assert ok, problems


def _row_key(row):
    if hasattr(row, "families"):
        labels = [VertexPattern.of(v).label() for v in row.fixed] + [p.label() for p in row.families]
    else:
        labels = [p.label() for p in row.vertices]
    return row.f, (row.f_min if row.f is None else None), frozenset(labels)


def test_criterion_04_nonrational_census():
    t0 = time.perf_counter()
    res = classify_nonrational()
    elapsed = time.perf_counter() - t0
    got = {_row_key(r) for r in res.without_agd}
    want = {_row_key(r) for r in NONRATIONAL_TABLE}
    per_f = []
    for f in range(8, 66, 2):
        at = classify_nonrational(f)
        if {_row_key(r) for r in at.without_agd} != {_row_key(r) for r in NONRATIONAL_TABLE if r.applies_at(f)}:
            per_f.append(f)
        if set(at.with_agd) != {r for r in NONRATIONAL_AGD_TABLE if r.applies_at(f)}:
            per_f.append(f)
    ok = got == want and len(got) == 16 and res.with_agd == NONRATIONAL_AGD_TABLE and not per_f and elapsed < 10
    verdict(4, ok, f"{len(got & want)}/16 rows without agd, {len(res.with_agd)}/5 with agd, "
                   f"per-f mismatches {per_f}, {elapsed:.1f} s")
    assert ok


def test_criterion_05_diophantine_oracle():
    checked = bad = 0
    for pair in PAIRS:
        oracle = RankOracle(pair.first, pair.second, bound=64)
        cond = nonrationality_conditions(pair)
        families = [solve_vertex_families(cond, t) for t in sorted({6, pair.threshold})]
        for f in range(6, 66, 2):
            want = oracle.at(f)
            for fam in families:
                if f < fam.threshold:
                    continue
                checked += 1
                bad += set(fam.instantiate(f)) != want
    ok = bad == 0
    verdict(5, ok, f"{len(PAIRS)} pairs, even f 6..64, exponent bound 64: {checked} comparisons, {bad} discrepancies")
    assert ok


def _random_quadruple(rng: random.Random) -> list[Fraction]:
    while True:
        out = [Fraction(rng.randint(1, 2 * q - 1), q) for q in (rng.randint(2, 24) for _ in range(4))]
        if max(out) < 2:
            return out


def test_criterion_06_vertex_enumeration():
    rng = random.Random(611)
    bad = nonempty = 0
    for _ in range(100):
        angles = _random_quadruple(rng)
        got = set(enumerate_vertices(angles, filters=VertexFilter.NONE))
        bad += got != vertex_loop(angles)
        nonempty += bool(got)
    ok = bad == 0 and nonempty > 20
    verdict(6, ok, f"100 random quadruples, {nonempty} with vertices, {bad} mismatches")
    assert ok


def test_criterion_07_myerson():
    report = myerson_self_check(tol=1e-12, theta_steps=120)
    ok = report.ok and report.rows_checked == 120 and report.max_residual < 1e-12
    verdict(7, ok, f"{report.rows_checked} row permutations, {report.type2_checked} type II checks, "
                   f"largest residual {report.max_residual:.1e}")
    assert ok, report.failures


def test_criterion_08_roots():
    r12 = [r.x for r in alpha_delta_squared_roots(12)]
    r16 = [r.x for r in alpha_delta_squared_roots(16)]
    r20 = alpha_delta_squared_roots(20)
    # printed to four places; the f=16 value is truncated, so allow one unit in the last place
    d12 = PI - math.acos(math.sqrt(10) / 4)
    d16 = PI - math.acos(math.sqrt(7 + math.sqrt(2) + math.sqrt(5) - math.sqrt(10)) / math.sqrt(12))
    ok = (
        len(r12) == 1 and abs(r12[0] - d12) < 1e-6 * PI and abs(r12[0] / PI - 0.7902) <= 1e-4
        and len(r16) == 1 and abs(r16[0] - d16) < 1e-6 * PI and abs(r16[0] / PI - 0.7898) <= 1e-4
        and not r20
    )
    verdict(8, ok, f"f=12 delta {r12[0] / PI:.6f} pi, f=16 delta {r16[0] / PI:.6f} pi, f=20 {len(r20)} roots")
    assert ok


# "Vertices" columns of the published tables; QP6' and E_square5 give the AVC only.
PUBLISHED_VERTICES = {
    "S1_12": "6 ad2, 6 abg2, 2 b3",
    "S1_16": "8 ad2, 8 abg2, 2 b4",
    "S2": "8 ag2, 8 b2d2, 2 a4",
    "S3": "8 ag2, 8 abd2, 2 b4",
    "S'3": "8 ag2, 8 abd2, 2 b4",
    "S4": "8 ab2, 4 a2gd, 6 g2d2",
    "QP6": "8 a3, 12 b2d2, 6 g4",
    "S5": "18 ab2, 6 a2d2, 6 gd3, 6 ag3d, 2 g6",
    "S6": "14 ad2, 10 ab3, 8 g3d, 6 a2bg2",
    "QP6'": "a3, ab2, a2d2, b2d2, g4",
    "E_square5_16": "ab2, a2d2, g4, d4",
}


def _published(text: str) -> Counter | set:
    parts = [p.split() for p in text.split(",")]
    if all(len(p) == 2 for p in parts):
        return Counter({V(v): int(n) for n, v in parts})
    return {V(p[0]) for p in parts}


def _corrupt(m, i: int, j: int):
    t = m.tiles[0]
    c = list(t.corners)
    c[i], c[j] = c[j], c[i]
    return replace(m, tiles=(Tile(t.id, t.orientation, tuple(c)),) + m.tiles[1:])


def test_criterion_09_tiling_suite():
    problems = []
    for spec in FIXTURES:
        m = load_fixture(spec.name)
        want = _published(PUBLISHED_VERTICES[spec.name])
        report = verify_tiling(m, expected_avc=list(want))
        got = report.vertex_multiset if isinstance(want, Counter) else set(report.vertex_multiset)
        if not report.passed or got != want:
            problems.append(("fixture", spec.name))
        # alpha/gamma swap moves the b-edge; beta/delta swap reverses the tile
        if verify_tiling(_corrupt(m, 0, 2)).passed or verify_tiling(_corrupt(m, 1, 3)).passed:
            problems.append(("corruption", spec.name))
    earth = flips = 0
    for f in range(6, 26, 2):
        m = generate_earth_map(f)
        avc = [V("agd"), V(f"b{f // 2}")] if f == 6 else RATIONAL_AGD_TABLE[0]
        earth += 1
        if not verify_tiling(m, expected_avc=avc).passed:
            problems.append(("earth", f))
        for row in EARTH_MAP_TABLE:
            if row.tiling not in ("E'", "E''"):
                continue
            for n in row.instances(f):
                fm = flip_for(row, f, n)
                flips += 1
                shapes = [r for r in (*RATIONAL_AGD_TABLE, *EARTH_MAP_SHAPES) if r.tiling == row.tiling and r.applies_at(f)]
                if fm is None or not any(verify_tiling(fm, expected_avc=r).passed for r in shapes):
                    problems.append(("flip", f, row.condition, n))
    ok = not problems
    verdict(9, ok, f"{len(FIXTURES)} fixtures, {earth} earth maps, {flips} flipped maps verified, "
                   f"2 corruptions detected per fixture; problems {problems}")
    assert ok


def test_criterion_10_f6_endpoint(capsys, tmp_path):
    assert main(["classify", "--f", "6"]) == 0
    records = json.loads(capsys.readouterr().out)
    path = tmp_path / "e6.json"
    assert main(["generate", "--family", "E", "--f", "6", "--out", str(path)]) == 0
    code = main(["verify", "--tiling", str(path), "--avc", "agd,b3"])
    capsys.readouterr()
    generated = load_tiling(path.read_bytes())
    minimal = classify_minimal()
    ok = (
        len(records) == 1
        and set(records[0]["avc"]) == {"αγδ", "β³"}
        and records[0]["realization"]["realizable"] is True
        and code == 0
        and generated.vertex_multiset() == Counter({V("agd"): 6, V("b3"): 2})
        and len(minimal) == 1
        and set(minimal[0].vertices) == {V("agd"), V("b3")}
        and canonical_code(minimal[0].tiling) == canonical_code(generated)
    )
    verdict(10, ok, f"classify --f 6 gives {records[0]['avc'] if records else None}, "
                    f"{len(minimal)} minimal tiling, generated cube verifies")
    assert ok


def test_recorded_approximations_follow_the_published_tables():
    for name, printed in PRINTED.items():
        for q, v in record(name).approx.items():
            want = round(MISPRINTS[name, q], 2) if (name, q) in MISPRINTS else printed[q]
            assert v == want, (name, q)
