"""Published AVC tables, kept as data for comparison with computed results."""

from __future__ import annotations

from dataclasses import dataclass

from .patterns import VertexPattern, patterns
from .vertices import V, VertexCombo


@dataclass(frozen=True)
class AvcRow:
    """A table row: ``f`` fixed, or ``f >= f_min`` with an optional congruence."""

    f: int | None
    vertices: tuple[VertexPattern, ...]
    f_min: int | None = None
    modulus: tuple[int, int] | None = None  # (m, r): f % m == r
    tiling: str = ""
    counting_infeasible: bool = False

    def applies_at(self, f: int) -> bool:
        if self.f is not None:
            return f == self.f
        if f < (self.f_min or 0):
            return False
        if self.modulus and f % self.modulus[0] != self.modulus[1]:
            return False
        return all(p.defined_at(f) for p in self.vertices)

    def fixed_set(self) -> frozenset[VertexCombo]:
        return frozenset(VertexCombo(*p.specs) for p in self.vertices)  # type: ignore[arg-type]


def _fixed(f: int, text: str, **kw) -> AvcRow:
    return AvcRow(f, tuple(VertexPattern.of(V(t)) for t in text.split()), **kw)


def _family(f_min: int, text: str, **kw) -> AvcRow:
    return AvcRow(None, patterns(text), f_min=f_min, **kw)


# Rational angles, no alpha-gamma-delta vertex.
RATIONAL_TABLE: tuple[AvcRow, ...] = (
    _fixed(8, "a3 bd2 d4 a2g2 ag4"),
    _fixed(16, "ab2 ag2 abd2 b4 b2g2 g4 ad4 b3d2 bg2d2 b2d4 g2d4 bd6 d8", tiling="S3, S'3"),
    _fixed(20, "ab2 gd3 a2gd", counting_infeasible=True),
    _fixed(24, "ab2 a4 gd3 abg2 ag4"),
    _fixed(36, "ab2 a2d2 gd3 a3g2 ag3d g6", tiling="S5"),
    _fixed(36, "ad2 ab3 g3d a2bg2 a6", tiling="S6"),
    _fixed(60, "ab2 gd3 a3b a5 bg4 a2g4"),
    _fixed(84, "ab2 gd3 a3gd g5d"),
    _fixed(132, "ab2 gd3 a4g2 ag6"),
)

# Rational angles with alpha-gamma-delta: the earth map tiling and its modifications.
RATIONAL_AGD_TABLE: tuple[AvcRow, ...] = (
    _family(8, "agd, b^(f/2)", tiling="E"),
    _family(8, "agd, a^m b^n, b^n g d", tiling="E'"),
    _family(8, "agd, a3, b^n g d", tiling="E'"),
    _family(8, "agd, a b^n, b^n g2 d2", tiling="E''"),
    _family(10, "agd, g3 d, a b^((f+2)/6), a b^((f-4)/6) d2", modulus=(6, 4), tiling="E'''"),
)

# Non-rational angles, no alpha-gamma-delta vertex.
NONRATIONAL_TABLE: tuple[AvcRow, ...] = (
    _fixed(12, "a3 ag2 b2d2"),
    _fixed(12, "a3 ad2 b2g2"),
    _fixed(24, "a3 bg2 b2d4"),
    _fixed(24, "a3 bd2 b2g4"),
    _family(8, "a2b, bd2, g^k"),
    _family(8, "ad2, bg2, a^m b^m"),
    _fixed(24, "a3 g4 b2d2"),
    _fixed(24, "a3 d4 b2g2"),
    _fixed(24, "a3 g2d2 b4 b2gd"),
    _fixed(36, "a3 g2d2 ab3"),
    _fixed(60, "a3 g2d2 b5"),
    _family(16, "ab2, g2d2, a^m, a^m b, a^m g d"),
    _family(16, "ag2, b2d2, a^m"),
    _family(16, "ad2, b2g2, a^m"),
    _family(16, "ag2, abd2, b^n"),
    _family(16, "ad2, abg2, b^n"),
)

# Non-rational angles with alpha-gamma-delta.
NONRATIONAL_AGD_TABLE: tuple[AvcRow, ...] = (
    _family(8, "agd, b^(f/2)", tiling="E"),
    _family(8, "agd, a^m, b^n g d", tiling="E'"),
    _family(8, "agd, a^m b^n, b^n g d", tiling="E'"),
    _family(8, "agd, a b^n, g^k d^k", tiling="E''"),
    _family(8, "agd, a b^n, b^n g^k d^k", tiling="E''"),
)

# Every earth map AVC in its most general shape; the agd tables are specialisations.
EARTH_MAP_SHAPES: tuple[AvcRow, ...] = NONRATIONAL_AGD_TABLE + (RATIONAL_AGD_TABLE[4],)
