"""Earth map tilings and their flip modifications and rearrangement.

Timezone ``i`` of the earth map holds two tiles: ``A_i`` with a corner at
the north pole and ``B_i`` with a corner at the south pole.  Between the
poles each timezone boundary is the zigzag ``N - p_i - q_i - S``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..angles import AngleExpr, DomainError
from ..geometry import TileKind
from ..vertices import V, VertexCombo
from .model import AngleSet, Orientation, Tile, TilingMap
from .search import TilingSearch

N, S = 0, 1


class FlipPreconditionError(ValueError):
    """The angles do not allow the requested flip."""


def _p(i: int, h: int) -> int:
    return 2 + (i % h)


def _q(i: int, h: int) -> int:
    return 2 + h + (i % h)


def _check_f(f: int) -> None:
    if f < 6 or f % 2:
        raise DomainError("f must be even and at least 6")


def default_angles(f: int, tile_kind: TileKind) -> AngleSet:
    """Angles of a generic earth map tile: the pole angle is 4π/f, the other three share 2π."""
    pole = AngleExpr.exact(0, 4)
    if tile_kind is TileKind.A3B:
        return (AngleExpr.exact(Fraction(3, 4)), pole, AngleExpr.exact(Fraction(5, 8)), AngleExpr.exact(Fraction(5, 8)))
    return (pole, AngleExpr.exact(Fraction(3, 4)), AngleExpr.exact(Fraction(5, 8)), AngleExpr.exact(Fraction(5, 8)))


def generate_earth_map(f: int, tile_kind: TileKind = TileKind.A3B, angles: AngleSet | None = None) -> TilingMap:
    """The earth map tiling with f/2 timezones.

    For a³b tiles the poles are β-vertices and every other vertex is αγδ;
    for a²bc tiles the poles are α-vertices and every other vertex is βγδ.
    """
    _check_f(f)
    h = f // 2
    tiles = []
    for i in range(h):
        p0, q0, p1, q1 = _p(i, h), _q(i, h), _p(i + 1, h), _q(i + 1, h)
        if tile_kind is TileKind.A3B:
            # corners (alpha, beta, gamma, delta)
            a = Tile(2 * i, Orientation.CW, (p0, N, p1, q0))
            b = Tile(2 * i + 1, Orientation.CW, (q1, S, q0, p1))
        else:
            a = Tile(2 * i, Orientation.CCW, (N, p0, q0, p1))
            b = Tile(2 * i + 1, Orientation.CCW, (S, q1, p1, q0))
        tiles += [a, b]
    return TilingMap(f, tile_kind, tuple(tiles), angles or default_angles(f, tile_kind), name=f"E{f}")


class FlipKind(enum.Enum):
    E_PRIME = "EPrime"
    E_DOUBLE_PRIME = "EDoublePrime"


@dataclass(frozen=True)
class FlipSpec:
    kind: FlipKind
    s: int
    positions: tuple[int, ...]

    def blocks(self, h: int) -> list[list[int]]:
        if not 1 <= self.s < h:
            raise DomainError(f"block size {self.s} must lie in [1, f/2)")
        out = [[(p + j) % h for j in range(self.s)] for p in self.positions]
        used = [z for b in out for z in b]
        if len(set(used)) != len(used):
            raise DomainError("flip blocks overlap")
        return out


def _angle_equal(lhs: Sequence[AngleExpr], rhs: Sequence[AngleExpr], f: int) -> bool:
    if all(a.is_exact for a in (*lhs, *rhs)):
        return sum(a.pi_units(f) for a in lhs) == sum(a.pi_units(f) for a in rhs)
    return math.isclose(sum(a.radians(f) for a in lhs), sum(a.radians(f) for a in rhs), abs_tol=1e-9)


def apply_flip(m: TilingMap, spec: FlipSpec, angles: AngleSet | None = None) -> TilingMap:
    """Reflect blocks of ``spec.s`` consecutive timezones of an a³b earth map.

    Each block is bounded by a hexagon of a-edges with corners
    ``N, p_i, q_i, S, q_{i+s}, p_{i+s}``.  With α = sβ the block is
    reflected so that N and p_i trade places (likewise q_i with p_{i+s} and
    S with q_{i+s}); with γ + δ = sβ, N trades with q_i and S with p_{i+s}.
    """
    if m.tile_kind is not TileKind.A3B:
        raise DomainError("flips are defined for a3b earth maps")
    angles = angles or m.angles
    if angles is None:
        raise DomainError("flip needs angles")
    al, be, ga, de = angles
    f, h = m.f, m.f // 2
    if spec.kind is FlipKind.E_PRIME:
        if not _angle_equal([al], [be] * spec.s, f):
            raise FlipPreconditionError(f"alpha != {spec.s} beta")
    elif not _angle_equal([ga, de], [be] * spec.s, f):
        raise FlipPreconditionError(f"gamma + delta != {spec.s} beta")
    tiles = {t.id: t for t in m.tiles}
    for block in spec.blocks(h):
        i, j = block[0], block[-1] + 1
        hexagon = [N, _p(i, h), _q(i, h), S, _q(j, h), _p(j, h)]
        if spec.kind is FlipKind.E_PRIME:
            pairs = [(0, 1), (2, 5), (3, 4)]
        else:
            pairs = [(0, 2), (3, 5), (1, 1), (4, 4)]
        swap: dict[int, int] = {}
        for x, y in pairs:
            swap[hexagon[x]] = hexagon[y]
            swap[hexagon[y]] = hexagon[x]
        for z in block:
            for tid in (2 * z, 2 * z + 1):
                t = tiles[tid]
                tiles[tid] = Tile(t.id, t.orientation.toggled(), tuple(swap.get(v, v) for v in t.corners))  # type: ignore[arg-type]
    label = "E'" if spec.kind is FlipKind.E_PRIME else "E''"
    meta = (("flip", f"{spec.kind.value} s={spec.s} at {','.join(map(str, spec.positions))}"),)
    return TilingMap(f, m.tile_kind, tuple(tiles[k] for k in sorted(tiles)), angles, name=f"{label}{f}", metadata=meta)


def rearrangement_angles(f: int) -> AngleSet:
    """Angles of the rearranged earth map: α = (4/3 - 4/(3f))π, γ = (2/3 - 2/(3f))π, δ = 2π/f."""
    return (
        AngleExpr.exact(Fraction(4, 3), Fraction(-4, 3)),
        AngleExpr.exact(0, 4),
        AngleExpr.exact(Fraction(2, 3), Fraction(-2, 3)),
        AngleExpr.exact(0, 2),
    )


def generate_rearrangement(q: int) -> TilingMap:
    """The rearranged earth map with f = 6q + 4 tiles.

    Built by search for the vertex counts (f-6) αγδ, 2 γ³δ,
    4 αβ^(q+1), 2 αβ^q δ².
    """
    if q < 1:
        raise DomainError("q must be a positive integer")
    f = 6 * q + 4
    budget = {V("agd"): f - 6, V("g3d"): 2, VertexCombo(1, q + 1, 0, 0): 4, VertexCombo(1, q, 0, 2): 2}
    m = TilingSearch(f, TileKind.A3B, list(budget), budget=budget).first()
    if m is None:  # pragma: no cover - the search always succeeds
        raise RuntimeError(f"no rearrangement found for q={q}")
    return TilingMap(f, m.tile_kind, m.tiles, rearrangement_angles(f), name=f"E'''{f}", metadata=(("q", str(q)),))
