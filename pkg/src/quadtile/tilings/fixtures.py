"""Special tilings kept as checked-in documents.

Each document was produced by :func:`build_fixture`, which searches for a
map with the listed vertex counts.  ``tests`` regenerate them and compare.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..angles import parse_angle
from ..geometry import TileKind
from ..vertices import V, VertexCombo
from .io import load_tiling, save_tiling
from .model import TilingMap, canonical_code, symmetry_count
from .search import TilingSearch


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    f: int
    tile_kind: TileKind
    vertices: str  # "8 ag2, 8 b2d2, 2 a4", or bare types when counts are free
    angles: tuple[str, str, str, str]
    variant: int = 0  # index among non-isomorphic solutions, most symmetric first
    note: str = ""

    def counts(self) -> dict[VertexCombo, int] | None:
        parts = [p.split() for p in self.vertices.split(",")]
        if all(len(p) == 2 for p in parts):
            return {V(v): int(n) for n, v in parts}
        return None

    def types(self) -> list[VertexCombo]:
        return [V(p.split()[-1]) for p in self.vertices.split(",")]


_S1_12 = "acos(sqrt(10)/4)"
_S1_16 = "acos(sqrt(7+sqrt(2)+sqrt(5)-sqrt(10))/sqrt(12))"
_S4 = "acos(sqrt(7-4*sqrt(2))/sqrt(17))"
_QP6 = "asin(sqrt(4+sqrt(3))/sqrt(6))"

FIXTURES: tuple[FixtureSpec, ...] = (
    FixtureSpec("S1_12", 12, TileKind.A3B, "6 ad2, 6 abg2, 2 b3",
                (f"2*{_S1_12}", "2/3", f"2*pi/3 - {_S1_12}", f"pi - {_S1_12}")),
    FixtureSpec("S1_16", 16, TileKind.A3B, "8 ad2, 8 abg2, 2 b4",
                (f"2*{_S1_16}", "1/2", f"3*pi/4 - {_S1_16}", f"pi - {_S1_16}")),
    FixtureSpec("S2", 16, TileKind.A3B, "8 ag2, 8 b2d2, 2 a4",
                ("1/2", "acos((sqrt(2)-1)/2)", "3/4", "acos((1-sqrt(2))/2)")),
    FixtureSpec("S3", 16, TileKind.A3B, "8 ag2, 8 abd2, 2 b4", ("1", "1/2", "1/2", "1/4"), 0,
                "more symmetric of the two maps with these vertices"),
    FixtureSpec("S'3", 16, TileKind.A3B, "8 ag2, 8 abd2, 2 b4", ("1", "1/2", "1/2", "1/4"), 1,
                "less symmetric of the two maps with these vertices"),
    FixtureSpec("S4", 16, TileKind.A3B, "8 ab2, 4 a2gd, 6 g2d2", ("1/2", "3/4", _S4, f"pi - {_S4}")),
    FixtureSpec("QP6", 24, TileKind.A3B, "8 a3, 12 b2d2, 6 g4", ("2/3", f"pi - {_QP6}", "1/2", _QP6)),
    FixtureSpec("S5", 36, TileKind.A3B, "18 ab2, 6 a2d2, 6 gd3, 6 ag3d, 2 g6", ("4/9", "7/9", "1/3", "5/9")),
    FixtureSpec("S6", 36, TileKind.A3B, "14 ad2, 10 ab3, 8 g3d, 6 a2bg2", ("1/3", "5/9", "7/18", "5/6")),
    FixtureSpec("QP6'", 24, TileKind.A2BC, "a3, ab2, a2d2, b2d2, g4", ("2/3", "2/3", "1/2", "1/3")),
    FixtureSpec("E_square5_16", 16, TileKind.A2BC, "8 ab2, 4 a2d2, 4 g4, 2 d4", ("1/2", "3/4", "1/2", "1/2")),
)


def fixture_spec(name: str) -> FixtureSpec:
    for spec in FIXTURES:
        if spec.name == name:
            return spec
    raise KeyError(name)


def _file_name(name: str) -> str:
    return name.replace("'", "p") + ".json"


def build_fixture(spec: FixtureSpec) -> TilingMap:
    counts = spec.counts()
    if counts is not None:
        search = TilingSearch(spec.f, spec.tile_kind, list(counts), budget=counts)
    else:
        search = TilingSearch(spec.f, spec.tile_kind, spec.types(), required=spec.types())
    if spec.variant == 0 and counts is None:
        found = search.first()
        assert found is not None, spec.name
        m = found
    else:
        classes: dict[tuple, TilingMap] = {}
        for sol in search.solutions():
            classes.setdefault(canonical_code(sol), sol)
        ranked = sorted(classes.items(), key=lambda kv: (-symmetry_count(kv[1]), kv[0]))
        m = ranked[spec.variant][1]
    angles = tuple(parse_angle(a) for a in spec.angles)
    meta = (("vertices", spec.vertices),) + ((("note", spec.note),) if spec.note else ())
    return TilingMap(m.f, m.tile_kind, m.tiles, angles, spec.name, meta).canonical()  # type: ignore[arg-type]


def fixture_bytes(name: str) -> bytes:
    return resources.files(__package__).joinpath("data").joinpath(_file_name(name)).read_bytes()


def load_fixture(name: str) -> TilingMap:
    return load_tiling(fixture_bytes(name))


def write_fixtures(directory: str) -> list[str]:
    """Regenerate every fixture document into ``directory``."""
    import os

    out = []
    for spec in FIXTURES:
        path = os.path.join(directory, _file_name(spec.name))
        with open(path, "wb") as fh:
            fh.write(save_tiling(build_fixture(spec)))
        out.append(path)
    return out
