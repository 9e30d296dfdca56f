"""Combinatorial maps of quadrilateral tilings.

A tile stores its four corner vertices in the fixed label order
(alpha, beta, gamma, delta) and an orientation mark.  Read counterclockwise
from outside the sphere, a ``CCW`` tile visits its corners as
alpha, beta, gamma, delta and a ``CW`` tile as alpha, delta, gamma, beta.
Edges are derived from consecutive corners and never stored.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..angles import AngleExpr, DomainError
from ..geometry import TileKind
from ..vertices import VertexCombo


class StructureError(ValueError):
    """A malformed map; ``location`` names the offending tile, edge or vertex."""

    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class Orientation(enum.Enum):
    CW = "cw"
    CCW = "ccw"

    def toggled(self) -> Orientation:
        return Orientation.CW if self is Orientation.CCW else Orientation.CCW


# Corner labels visited counterclockwise.
CCW_LABELS = {Orientation.CCW: (0, 1, 2, 3), Orientation.CW: (0, 3, 2, 1)}

# Edge type between two corner labels.
_EDGE_TYPES = {
    TileKind.A3B: {frozenset((0, 1)): "a", frozenset((1, 2)): "a", frozenset((2, 3)): "b", frozenset((3, 0)): "a"},
    TileKind.A2BC: {frozenset((0, 1)): "a", frozenset((1, 2)): "c", frozenset((2, 3)): "b", frozenset((3, 0)): "a"},
}


def edge_type(kind: TileKind, i: int, j: int) -> str:
    return _EDGE_TYPES[kind][frozenset((i, j))]


@dataclass(frozen=True)
class Tile:
    id: int
    orientation: Orientation
    corners: tuple[int, int, int, int]

    def ccw_sides(self) -> list[tuple[int, int, int, int]]:
        """``(from_vertex, to_vertex, from_label, to_label)`` for each side, counterclockwise."""
        order = CCW_LABELS[self.orientation]
        return [
            (self.corners[order[i]], self.corners[order[(i + 1) % 4]], order[i], order[(i + 1) % 4])
            for i in range(4)
        ]


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    kind: str
    tiles: tuple[int, ...]


AngleSet = tuple[AngleExpr, AngleExpr, AngleExpr, AngleExpr]


@dataclass(frozen=True)
class TilingMap:
    f: int
    tile_kind: TileKind
    tiles: tuple[Tile, ...]
    angles: AngleSet | None = None
    name: str = ""
    metadata: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if self.f != len(self.tiles):
            raise StructureError(f"f={self.f} but {len(self.tiles)} tiles", "map")

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for t in self.tiles for v in t.corners)

    def tile(self, tid: int) -> Tile:
        for t in self.tiles:
            if t.id == tid:
                return t
        raise KeyError(tid)

    def vertex_combos(self) -> dict[int, VertexCombo]:
        counts: dict[int, list[int]] = {}
        for t in self.tiles:
            for label, v in enumerate(t.corners):
                counts.setdefault(v, [0, 0, 0, 0])[label] += 1
        return {v: VertexCombo(*c) for v, c in sorted(counts.items())}

    def vertex_multiset(self) -> Counter[VertexCombo]:
        return Counter(self.vertex_combos().values())

    def directed_sides(self) -> dict[tuple[int, int], list[tuple[int, str]]]:
        """Each directed side ``(u, v)`` with the tiles traversing it and its type."""
        out: dict[tuple[int, int], list[tuple[int, str]]] = {}
        for t in self.tiles:
            for u, v, i, j in t.ccw_sides():
                out.setdefault((u, v), []).append((t.id, edge_type(self.tile_kind, i, j)))
        return out

    def edges(self) -> list[Edge]:
        """Undirected edges with the type seen from each side (types may disagree in a bad map)."""
        seen: dict[frozenset[int], list[tuple[int, str]]] = {}
        for (u, v), uses in sorted(self.directed_sides().items()):
            seen.setdefault(frozenset((u, v)), []).extend(uses)
        out = []
        for key, uses in sorted(seen.items(), key=lambda kv: sorted(kv[0])):
            u, v = sorted(key)
            kinds = {k for _, k in uses}
            out.append(Edge(u, v, kinds.pop() if len(kinds) == 1 else "/".join(sorted(kinds)), tuple(t for t, _ in uses)))
        return out

    def canonical(self) -> TilingMap:
        """Tiles sorted by id; vertex ids renumbered in order of first use."""
        tiles = sorted(self.tiles, key=lambda t: t.id)
        rename: dict[int, int] = {}
        for t in tiles:
            for v in t.corners:
                rename.setdefault(v, len(rename))
        new = tuple(Tile(t.id, t.orientation, tuple(rename[v] for v in t.corners)) for t in tiles)  # type: ignore[misc]
        return TilingMap(self.f, self.tile_kind, new, self.angles, self.name, tuple(sorted(self.metadata)))

    def with_angles(self, angles: AngleSet | None) -> TilingMap:
        return TilingMap(self.f, self.tile_kind, self.tiles, angles, self.name, self.metadata)

    def renamed(self, name: str, metadata: Iterable[tuple[str, str]] = ()) -> TilingMap:
        return TilingMap(self.f, self.tile_kind, self.tiles, self.angles, name, tuple(metadata) or self.metadata)


def exact_angles(values: Sequence[Fraction | int | str]) -> AngleSet:
    """Constant angles in pi units."""
    return tuple(AngleExpr.exact(v) for v in values)  # type: ignore[return-value]


def angle_values(angles: AngleSet, f: int) -> tuple[list[Fraction] | None, list[float]]:
    """Exact pi-unit values when every angle is exact, and radians."""
    exact = [a.pi_units(f) for a in angles] if all(a.is_exact for a in angles) else None
    return exact, [a.radians(f) for a in angles]


def tile_neighbours(m: TilingMap) -> dict[tuple[int, int], tuple[int, int]]:
    """``(tile, ccw side index) -> (tile, ccw side index)`` across each edge."""
    where: dict[tuple[int, int], tuple[int, int]] = {}
    for t in m.tiles:
        for i, (u, v, _, _) in enumerate(t.ccw_sides()):
            if (u, v) in where:
                raise StructureError("directed side used twice", f"edge {u}->{v}")
            where[(u, v)] = (t.id, i)
    out = {}
    for (u, v), side in where.items():
        if (v, u) not in where:
            raise StructureError("side not matched by a neighbour", f"edge {u}-{v}")
        out[side] = where[(v, u)]
    return out


def canonical_code(m: TilingMap, mirror: bool = True) -> tuple:
    """A complete isomorphism invariant: the least breadth-first encoding over all starting sides.

    With ``mirror`` the mirror image is considered the same map.
    """
    nb = tile_neighbours(m)
    tiles = {t.id: t for t in m.tiles}
    best = None
    dirs = (1, -1) if mirror else (1,)
    for start in tiles:
        for s0 in range(4):
            for d in dirs:
                code = _encode(tiles, nb, start, s0, d)
                if best is None or code < best:
                    best = code
    return best  # type: ignore[return-value]


def _encode(tiles, nb, start, s0, d) -> tuple:
    order = {start: 0}
    entry = {start: s0}
    queue = [start]
    out = []
    for t in queue:
        labels = CCW_LABELS[tiles[t].orientation]
        row = []
        for step in range(4):
            i = (entry[t] + d * step) % 4
            # label at the corner where side i starts (or ends when read backwards)
            corner = labels[i] if d == 1 else labels[(i + 1) % 4]
            u, j = nb[(t, i)]
            if u not in order:
                order[u] = len(order)
                entry[u] = j
                queue.append(u)
            row.append((corner, order[u], (j - entry[u]) * d % 4))
        out.append(tuple(row))
    return tuple(out)


def check_tile_ids(tiles: Sequence[Tile]) -> None:
    ids = [t.id for t in tiles]
    if len(set(ids)) != len(ids):
        raise DomainError("duplicate tile ids")


def symmetry_count(m: TilingMap) -> int:
    """Number of orientation-preserving automorphisms (label preserving)."""
    nb = tile_neighbours(m)
    tiles = {t.id: t for t in m.tiles}
    codes = [_encode(tiles, nb, start, s0, 1) for start in tiles for s0 in range(4)]
    return codes.count(min(codes))
