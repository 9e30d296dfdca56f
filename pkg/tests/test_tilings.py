from __future__ import annotations

import json
from collections import Counter
from dataclasses import replace

import pytest
from oracles import flip_for

from quadtile.angles import DomainError
from quadtile.catalog import EARTH_MAP_SHAPES, RATIONAL_AGD_TABLE
from quadtile.geometry import TileKind
from quadtile.geometry_tables import EARTH_MAP_TABLE
from quadtile.tilings import (
    FIXTURES,
    FlipKind,
    FlipPreconditionError,
    FlipSpec,
    Orientation,
    ParseError,
    StructureError,
    Tile,
    TilingMap,
    VersionError,
    apply_flip,
    build_fixture,
    canonical_code,
    classify_minimal,
    exact_angles,
    generate_earth_map,
    generate_rearrangement,
    load_fixture,
    load_tiling,
    render_svg,
    save_tiling,
    search_tiling,
    verify_tiling,
)
from quadtile.tilings.fixtures import fixture_bytes
from quadtile.tilings.model import symmetry_count
from quadtile.vertices import V

QP6_PRIME = Counter({V("a3"): 2, V("ab2"): 6, V("a2d2"): 6, V("b2d2"): 6, V("g4"): 6})


def _expected_multiset(spec) -> Counter:
    counts = spec.counts()
    return Counter(counts) if counts is not None else QP6_PRIME


@pytest.mark.parametrize("spec", FIXTURES, ids=lambda s: s.name)
def test_fixture_regenerates_byte_for_byte(spec):
    assert save_tiling(build_fixture(spec)) == fixture_bytes(spec.name)


@pytest.mark.parametrize("spec", FIXTURES, ids=lambda s: s.name)
def test_fixture_verifies_with_its_vertex_counts(spec):
    m = load_fixture(spec.name)
    report = verify_tiling(m, expected_avc=list(_expected_multiset(spec)))
    assert report.passed, report.summary()
    assert report.vertex_multiset == _expected_multiset(spec)


def test_s3_variants_are_distinct_maps():
    s3, s3p = load_fixture("S3"), load_fixture("S'3")
    assert s3.vertex_multiset() == s3p.vertex_multiset()
    assert canonical_code(s3) != canonical_code(s3p)
    assert symmetry_count(s3) > symmetry_count(s3p)


def _relabel(m: TilingMap, shift: int) -> TilingMap:
    tiles = tuple(Tile(t.id + 100, t.orientation, tuple(v * 7 + shift for v in t.corners)) for t in reversed(m.tiles))
    return TilingMap(m.f, m.tile_kind, tiles, m.angles)


def test_canonical_code_ignores_ids():
    m = load_fixture("S5")
    assert canonical_code(_relabel(m, 3)) == canonical_code(m)


def test_round_trip():
    for spec in FIXTURES:
        m = load_fixture(spec.name)
        assert load_tiling(save_tiling(m)) == m.canonical()
    m = _relabel(generate_earth_map(10), 5)
    assert load_tiling(save_tiling(m)) == m.canonical()


def test_version_and_schema_errors():
    doc = json.loads(fixture_bytes("S2"))
    with pytest.raises(VersionError):
        load_tiling(json.dumps({**doc, "version": 2}))
    with pytest.raises(VersionError):
        load_tiling(json.dumps({k: v for k, v in doc.items() if k != "version"}))
    with pytest.raises(ParseError, match="unknown fields"):
        load_tiling(json.dumps({**doc, "colour": "red"}))
    bad = json.loads(fixture_bytes("S2"))
    bad["tiles"][0]["corners"] = [0, 1, 2]
    with pytest.raises(ParseError, match=r"tiles\[0\]"):
        load_tiling(json.dumps(bad))
    with pytest.raises(ParseError):
        load_tiling("{not json")
    short = {**doc, "tiles": doc["tiles"][:-1]}
    with pytest.raises(ParseError):
        load_tiling(json.dumps(short))


def _swap_corners(m: TilingMap, tid: int, i: int, j: int) -> TilingMap:
    tiles = []
    for t in m.tiles:
        if t.id == tid:
            c = list(t.corners)
            c[i], c[j] = c[j], c[i]
            t = Tile(t.id, t.orientation, tuple(c))
        tiles.append(t)
    return replace(m, tiles=tuple(tiles))


def test_edge_relabel_is_detected():
    m = load_fixture("S4")
    # alpha and gamma trade corners: the b-edge moves and meets an a-edge
    report = verify_tiling(_swap_corners(m, 0, 0, 2))
    assert not report.passed
    assert not report.rules["edges"]
    assert any("meets type" in f.message or "neighbour" in f.message for f in report.failures)


def test_corner_swap_is_detected():
    m = load_fixture("QP6")
    # beta and delta trade corners: the tile is traversed the wrong way round
    report = verify_tiling(_swap_corners(m, 3, 1, 3))
    assert not report.passed
    assert not report.rules["edges"]
    assert not report.rules["angle sums"]


def test_orientation_flip_is_detected():
    m = load_fixture("S2")
    t = m.tiles[0]
    tiles = (Tile(t.id, t.orientation.toggled(), t.corners),) + m.tiles[1:]
    assert not verify_tiling(replace(m, tiles=tiles)).passed


def test_wrong_angles_are_detected():
    m = load_fixture("S5")
    report = verify_tiling(m, angles=exact_angles(["1/2", "3/4", "1/3", "5/9"]))
    assert not report.rules["angle sums"]


def test_unexpected_avc_is_detected():
    report = verify_tiling(load_fixture("S6"), expected_avc=[V("ad2"), V("ab3"), V("g3d")])
    assert not report.rules["avc"]


def test_tile_count_mismatch():
    m = generate_earth_map(8)
    with pytest.raises(StructureError):
        TilingMap(10, m.tile_kind, m.tiles)


@pytest.mark.parametrize("f", range(6, 26, 2))
@pytest.mark.parametrize("kind", [TileKind.A3B, TileKind.A2BC])
def test_earth_map_verifies(f, kind):
    m = generate_earth_map(f, kind)
    pole = V(f"b{f // 2}") if kind is TileKind.A3B else V(f"a{f // 2}")
    common = V("agd") if kind is TileKind.A3B else V("bgd")
    report = verify_tiling(m, expected_avc=[common, pole])
    assert report.passed, report.summary()
    assert report.vertex_multiset == Counter({common: f, pole: 2})
    if kind is TileKind.A3B and f >= 8:
        assert verify_tiling(m, expected_avc=RATIONAL_AGD_TABLE[0]).passed


FLIP_CASES = [
    (f, i, n)
    for f in range(8, 26, 2)
    for i, row in enumerate(EARTH_MAP_TABLE)
    if row.tiling in ("E'", "E''")
    for n in row.instances(f)
]


@pytest.mark.parametrize("f,i,n", FLIP_CASES)
def test_flips_reproduce_earth_map_rows(f, i, n):
    row = EARTH_MAP_TABLE[i]
    m = flip_for(row, f, n)
    assert m is not None
    shapes = [r for r in (*RATIONAL_AGD_TABLE, *EARTH_MAP_SHAPES) if r.tiling == row.tiling and r.applies_at(f)]
    assert any(verify_tiling(m, expected_avc=r).passed for r in shapes)


def test_flip_examples():
    f = 12
    m = generate_earth_map(f, angles=exact_angles(["2/3", "1/3", "1/2", "1/2"]))
    e1 = apply_flip(m, FlipSpec(FlipKind.E_PRIME, 2, (0, 2, 4)))
    assert e1.vertex_multiset() == Counter({V("a3"): 2, V("b2gd"): 6, V("agd"): 6})
    f = 18
    m = generate_earth_map(f, angles=exact_angles(["10/9", "2/9", "4/9", "4/9"]))
    e2 = apply_flip(m, FlipSpec(FlipKind.E_DOUBLE_PRIME, 4, (0, 4)))
    assert e2.vertex_multiset() == Counter({V("agd"): 14, V("ab4"): 4, V("bg2d2"): 2})
    assert verify_tiling(e2).passed


def test_flip_preconditions():
    m = generate_earth_map(12)
    with pytest.raises(FlipPreconditionError):
        apply_flip(m, FlipSpec(FlipKind.E_PRIME, 2, (0,)))
    ok = generate_earth_map(12, angles=exact_angles(["2/3", "1/3", "1/2", "1/2"]))
    with pytest.raises(DomainError):
        apply_flip(ok, FlipSpec(FlipKind.E_PRIME, 2, (0, 1)))
    with pytest.raises(DomainError):
        apply_flip(generate_earth_map(12, TileKind.A2BC), FlipSpec(FlipKind.E_PRIME, 2, (0,)))


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_rearrangement(q):
    f = 6 * q + 4
    m = generate_rearrangement(q)
    report = verify_tiling(m, expected_avc=RATIONAL_AGD_TABLE[4])
    assert report.passed, report.summary()
    assert report.vertex_multiset == Counter(
        {V("agd"): f - 6, V("g3d"): 2, V(f"ab{q + 1}"): 4, V(f"ab{q}d2"): 2}
    )


def test_f6_minimal_tiling_is_the_cube():
    (res,) = classify_minimal()
    assert res.vertices == {V("agd"), V("b3")}
    assert canonical_code(res.tiling) == canonical_code(generate_earth_map(6))


def test_search_finds_cube_only_with_these_vertices():
    m = search_tiling(6, TileKind.A3B, {V("agd"): 6, V("b3"): 2})
    assert m is not None and canonical_code(m) == canonical_code(generate_earth_map(6))
    assert search_tiling(8, TileKind.A3B, {V("agd"): 8, V("b3"): 2}) is None


def test_svg_is_deterministic():
    m = load_fixture("QP6'")
    a, b = render_svg(m), render_svg(load_fixture("QP6'"))
    assert a == b
    assert a.startswith("<svg") and a.rstrip().endswith("</svg>")
    assert a.count("<line") == 4 * m.f
    assert 'data-edge="c"' in a


def test_orientation_toggle():
    assert Orientation.CW.toggled() is Orientation.CCW
