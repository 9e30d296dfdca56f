"""Closed-form angles and edges of known tiles, for checking the realisation code.

Values are in radians.  ``approx`` holds published two-digit values in
units of pi.  Families carry a parameter and a few sample values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import acos, asin, cos, pi, sin, sqrt, tan
from typing import Callable

from .geometry import TileKind

Formula = Callable[[float], float]


def _const(x: float) -> Formula:
    return lambda _t: x


def _cot(x: float) -> float:
    return 1 / tan(x)


@dataclass(frozen=True)
class GeometryRecord:
    name: str
    f: int | None
    tile_kind: TileKind
    angles: tuple[Formula, Formula, Formula, Formula]
    edges: dict[str, Formula]
    approx: dict[str, float] = field(default_factory=dict)
    vertices: str = ""
    samples: tuple[float, ...] = (0.0,)
    parameter: str = ""

    def angle_values(self, t: float) -> tuple[float, float, float, float]:
        return tuple(g(t) for g in self.angles)  # type: ignore[return-value]

    def edge_values(self, t: float) -> dict[str, float]:
        return {k: g(t) for k, g in self.edges.items()}


_s1_12 = acos(sqrt(10) / 4)
_s1_16 = acos(sqrt(7 + sqrt(2) + sqrt(5) - sqrt(10)) / sqrt(12))
_s4 = acos(sqrt(7 - 4 * sqrt(2)) / sqrt(17))
_qp6 = asin(sqrt(4 + sqrt(3)) / sqrt(6))

GEOMETRY_TABLE: tuple[GeometryRecord, ...] = (
    GeometryRecord(
        "S1_12", 12, TileKind.A3B,
        (_const(2 * _s1_12), _const(2 * pi / 3), _const(2 * pi / 3 - _s1_12), _const(pi - _s1_12)),
        {"a": _const(acos(2 * sqrt(5) / 3 - 1)), "b": _const(acos(3 * sqrt(5) - 6))},
        {"alpha": 0.42, "gamma": 0.46, "delta": 0.79, "a": 0.34, "b": 0.25},
        "6 ad2, 6 abg2, 2 b3",
    ),
    GeometryRecord(
        "S1_16", 16, TileKind.A3B,
        (_const(2 * _s1_16), _const(pi / 2), _const(3 * pi / 4 - _s1_16), _const(pi - _s1_16)),
        {
            "a": _const(acos((-3 - sqrt(2) + sqrt(5) + sqrt(10)) / 2)),
            "b": _const(acos(-9 - 6 * sqrt(2) + 4 * sqrt(5) + 3 * sqrt(10))),
        },
        {"a": 0.34, "b": 0.11},
        "8 ad2, 8 abg2, 2 b4",
    ),
    GeometryRecord(
        "S2", 16, TileKind.A3B,
        (_const(pi / 2), _const(acos((sqrt(2) - 1) / 2)), _const(3 * pi / 4), _const(acos((1 - sqrt(2)) / 2))),
        {"a": _const(acos(sqrt((2 * sqrt(2) - 1) / 7))), "b": _const(acos(sqrt((22 * sqrt(2) - 25) / 7)))},
        {"beta": 0.43, "delta": 0.57, "a": 0.33, "b": 0.12},
        "8 ag2, 8 b2d2, 2 a4",
    ),
    GeometryRecord(
        "S3", 16, TileKind.A3B,
        (_const(pi), _const(pi / 2), _const(pi / 2), _const(pi / 4)),
        {"a": _const(pi / 4), "b": _const(pi / 2)},
        {},
        "8 ag2, 8 abd2, 2 b4",
    ),
    GeometryRecord(
        "S4", 16, TileKind.A3B,
        (_const(pi / 2), _const(3 * pi / 4), _const(_s4), _const(pi - _s4)),
        {"a": _const(pi / 4), "b": _const(acos((2 * sqrt(2) - 1) / 4))},
        {"gamma": 0.41, "delta": 0.59, "b": 0.35},
        "8 ab2, 4 a2gd, 6 g2d2",
    ),
    GeometryRecord(
        "QP6", 24, TileKind.A3B,
        (_const(2 * pi / 3), _const(pi - _qp6), _const(pi / 2), _const(_qp6)),
        {"a": _const(acos(sqrt((5 + 2 * sqrt(3)) / 13))), "b": _const(acos(sqrt(2 * (4 - sqrt(3)) / 13)))},
        {"beta": 0.57, "delta": 0.43, "a": 0.20, "b": 0.30},
        "8 a3, 12 b2d2, 6 g4",
    ),
    GeometryRecord(
        "S5", 36, TileKind.A3B,
        (_const(4 * pi / 9), _const(7 * pi / 9), _const(pi / 3), _const(5 * pi / 9)),
        {
            "a": _const(acos((sin(2 * pi / 9) + 2 * sin(4 * pi / 9)) / (sqrt(3) * (1 + cos(2 * pi / 9))))),
            "b": _const(acos((
                4 * sin(pi / 9) ** 2
                - sqrt(3) * _cot(4 * pi / 9)
                + 2 * sqrt(3) * cos(2 * pi / 9) * _cot(4 * pi / 9)
                + 4 * sin(4 * pi / 9) * tan(pi / 9)
            ) / 3)),
        },
        {"a": 0.17, "b": 0.26},
        "18 ab2, 6 a2d2, 6 gd3, 6 ag3d, 2 g6",
    ),
    GeometryRecord(
        "S6", 36, TileKind.A3B,
        (_const(pi / 3), _const(5 * pi / 9), _const(7 * pi / 18), _const(5 * pi / 6)),
        {
            "a": _const(acos(4 * cos(pi / 9) - 3)),
            "b": _const(acos(6 * cos(pi / 9) + 2 * sqrt(3) * sin(pi / 9) - 3 * sqrt(3) * tan(pi / 9) - 4)),
        },
        {"a": 0.23, "b": 0.12},
        "14 ad2, 10 ab3, 8 g3d, 6 a2bg2",
    ),
    GeometryRecord(
        "QP6 family", 24, TileKind.A2BC,
        (_const(2 * pi / 3), lambda d: pi - d, _const(pi / 2), lambda d: d),
        {
            "a": lambda d: asin(1 / (sqrt(3) * sin(d))),
            "b": lambda d: acos((sqrt(3 * sin(d) ** 2 - 1) - cos(d)) / (2 * sin(d))),
            "c": lambda d: acos((sqrt(3 * sin(d) ** 2 - 1) + cos(d)) / (2 * sin(d))),
        },
        {},
        "8 a3, 12 b2d2, 6 g4",
        samples=(0.3 * pi, 0.43 * pi, pi / 2, 0.6 * pi, 0.7 * pi),
        parameter="delta",
    ),
    GeometryRecord(
        "QP6'", 24, TileKind.A2BC,
        (_const(2 * pi / 3), _const(2 * pi / 3), _const(pi / 2), _const(pi / 3)),
        {
            "a": _const(acos(sqrt(5) / 3)),
            "b": _const(acos((sqrt(5) - 1) / (2 * sqrt(3)))),
            "c": _const(acos((sqrt(5) + 1) / (2 * sqrt(3)))),
        },
    ),
    GeometryRecord(
        "E_square5", None, TileKind.A2BC,
        (lambda f: (1 - 8 / f) * pi, lambda f: (0.5 + 4 / f) * pi, _const(pi / 2), lambda f: 8 * pi / f),
        {
            "a": lambda f: acos(1 - (3 - sqrt(5)) / 4 / cos(4 * pi / f) ** 2),
            "b": lambda f: acos((sqrt(5) - 1) / 4 / cos(4 * pi / f)),
            "c": lambda f: acos((3 - sqrt(5)) * cos(4 * pi / f) + (sqrt(5) - 2) / cos(4 * pi / f)),
        },
        samples=(16, 20, 24, 32, 48),
        parameter="f",
    ),
)


def record(name: str) -> GeometryRecord:
    for r in GEOMETRY_TABLE:
        if r.name == name:
            return r
    raise KeyError(name)


# ---------------------------------------------------------------------------
# Earth map tilings and their modifications


@dataclass(frozen=True)
class EarthMapRow:
    """Angles and vertex counts of an earth map tiling, possibly indexed by an integer ``n``.

    ``alpha`` and ``gamma_delta`` (the sum γ + δ) are in pi units.  ``n_range``
    gives the admissible ``n`` at ``f``; rows without ``n`` return ``[None]``
    when they apply and ``[]`` otherwise.
    """

    tiling: str
    condition: str
    alpha: Callable[[int, int | None], Fraction]
    gamma_delta: Callable[[int, int | None], Fraction]
    vertices: Callable[[int, int | None], list[tuple[int, str]]]
    n_range: Callable[[int], list[int | None]]
    f_min: int = 8
    gamma_delta_split: Callable[[int], tuple[Fraction, Fraction]] | None = None

    def instances(self, f: int) -> list[int | None]:
        if f < self.f_min or f % 2:
            return []
        return self.n_range(f)


def _when(cond: Callable[[int], bool]) -> Callable[[int], list[int | None]]:
    return lambda f: [None] if cond(f) else []


def _open(lo: Callable[[int], Fraction], hi: Callable[[int], Fraction], closed_hi: bool = False):
    def rng(f: int) -> list[int | None]:
        a, b = lo(f), hi(f)
        return [n for n in range(math.floor(a) + 1, math.ceil(b) + 1) if a < n and (n < b or (closed_hi and n == b))]
    return rng


def _fr(x: int | Fraction) -> Fraction:
    return Fraction(x)


EARTH_MAP_TABLE: tuple[EarthMapRow, ...] = (
    EarthMapRow(
        "E", "alpha + gamma + delta = 2pi",
        lambda f, n: Fraction(3, 4), lambda f, n: Fraction(5, 4),
        lambda f, n: [(f, "agd"), (2, f"b{f // 2}")],
        _when(lambda f: True), f_min=6,
    ),
    EarthMapRow(
        "E'", "alpha = 2pi/3",
        lambda f, n: Fraction(2, 3), lambda f, n: Fraction(4, 3),
        lambda f, n: [(f - 6, "agd"), (2, "a3"), (6, f"b{f // 6}gd")],
        _when(lambda f: f % 6 == 0),
    ),
    EarthMapRow(
        "E'", "alpha = (1 - 4/f)pi, two blocks",
        lambda f, n: 1 - Fraction(4, f), lambda f, n: 1 + Fraction(4, f),
        lambda f, n: [(f - 4, "agd"), (2, "a2b2"), (4, f"b{f // 4 - 1}gd")],
        _when(lambda f: f % 4 == 0),
    ),
    EarthMapRow(
        "E'", "alpha = 4n/f pi, gamma > pi, three blocks",
        lambda f, n: Fraction(4 * n, f), lambda f, n: 2 - Fraction(4 * n, f),
        lambda f, n: [(f - 6, "agd"), (2, f"a3b{f // 2 - 3 * n}"), (6, f"b{n}gd")],
        _open(lambda f: Fraction(f, 8), lambda f: Fraction(f, 6) - Fraction(1, 3), closed_hi=True),
    ),
    EarthMapRow(
        "E'", "alpha = 4n/f pi, gamma > pi, two blocks",
        lambda f, n: Fraction(4 * n, f), lambda f, n: 2 - Fraction(4 * n, f),
        lambda f, n: [(f - 4, "agd"), (2, f"a2b{f // 2 - 2 * n}"), (4, f"b{n}gd")],
        _open(lambda f: Fraction(f, 8), lambda f: Fraction(f, 4) - 1),
    ),
    EarthMapRow(
        "E'", "alpha = pi",
        lambda f, n: _fr(1), lambda f, n: _fr(1),
        lambda f, n: [(f - 2, "agd"), (2, f"ab{f // 4}"), (2, f"b{f // 4}gd")],
        _when(lambda f: f % 4 == 0),
    ),
    EarthMapRow(
        "E'", "alpha = (1 - 4/f)pi, one block",
        lambda f, n: 1 - Fraction(4, f), lambda f, n: 1 + Fraction(4, f),
        lambda f, n: [(f - 2, "agd"), (2, f"ab{f // 4 + 1}"), (2, f"b{f // 4 - 1}gd")],
        _when(lambda f: f % 4 == 0),
    ),
    EarthMapRow(
        "E'", "alpha = 4n/f pi, alpha > pi, one block",
        lambda f, n: Fraction(4 * n, f), lambda f, n: 2 - Fraction(4 * n, f),
        lambda f, n: [(f - 2, "agd"), (2, f"ab{f // 2 - n}"), (2, f"b{n}gd")],
        _open(lambda f: Fraction(f, 4), lambda f: Fraction(3 * f, 8)),
    ),
    EarthMapRow(
        "E'", "alpha = 4n/f pi, gamma > pi, one block",
        lambda f, n: Fraction(4 * n, f), lambda f, n: 2 - Fraction(4 * n, f),
        lambda f, n: [(f - 2, "agd"), (2, f"ab{f // 2 - n}"), (2, f"b{n}gd")],
        _open(lambda f: Fraction(f, 8), lambda f: Fraction(f, 4) - 1),
    ),
    EarthMapRow(
        "E''", "alpha = pi",
        lambda f, n: _fr(1), lambda f, n: _fr(1),
        lambda f, n: [(f - 4, "agd"), (4, f"ab{f // 4}"), (2, "g2d2")],
        _when(lambda f: f % 4 == 0),
    ),
    EarthMapRow(
        "E''", "alpha = (2 - 4n/f)pi, two blocks",
        lambda f, n: 2 - Fraction(4 * n, f), lambda f, n: Fraction(4 * n, f),
        lambda f, n: [(f - 4, "agd"), (4, f"ab{n}"), (2, f"b{f // 2 - 2 * n}g2d2")],
        _open(lambda f: Fraction(f, 8), lambda f: Fraction(f, 4)),
    ),
    EarthMapRow(
        "E''", "alpha = (2 - 4n/f)pi, three blocks",
        lambda f, n: 2 - Fraction(4 * n, f), lambda f, n: Fraction(4 * n, f),
        lambda f, n: [(f - 6, "agd"), (6, f"ab{n}"), (2, f"b{f // 2 - 3 * n}g3d3")],
        _open(lambda f: Fraction(f, 8), lambda f: Fraction(f, 6)),
    ),
    EarthMapRow(
        "E''", "alpha = 4pi/3",
        lambda f, n: Fraction(4, 3), lambda f, n: Fraction(2, 3),
        lambda f, n: [(f - 6, "agd"), (6, f"ab{f // 6}"), (2, "g3d3")],
        _when(lambda f: f % 6 == 0),
    ),
    EarthMapRow(
        "E'''", "f = 4 mod 6",
        lambda f, n: Fraction(4, 3) - Fraction(4, 3 * f), lambda f, n: Fraction(2, 3) + Fraction(4, 3 * f),
        lambda f, n: [(f - 6, "agd"), (2, "g3d"), (4, f"ab{(f + 2) // 6}"), (2, f"ab{(f - 4) // 6}d2")],
        _when(lambda f: f % 6 == 4),
        gamma_delta_split=lambda f: (Fraction(2, 3) - Fraction(2, 3 * f), Fraction(2, f)),
    ),
)
