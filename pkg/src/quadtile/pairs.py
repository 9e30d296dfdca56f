"""Vertex pairs that every tiling without alpha-gamma-delta must contain (up to symmetry)."""

from __future__ import annotations

from dataclasses import dataclass

from .vertices import VertexCombo, V

AGD = V("agd")


@dataclass(frozen=True)
class CandidatePair:
    first: VertexCombo
    second: VertexCombo
    unique_degree3: bool
    threshold: int

    @property
    def vertices(self) -> tuple[VertexCombo, VertexCombo]:
        return (self.first, self.second)

    def label(self) -> str:
        return f"{{{self.first}, {self.second}}}"

    def __str__(self) -> str:
        return self.label()


def _group(first: str, seconds: str, unique: bool, threshold: int) -> list[CandidatePair]:
    return [CandidatePair(V(first), V(s), unique, threshold) for s in seconds.split()]


# Two degree-3 vertices need only f >= 8.  A unique degree-3 vertex alpha^3
# forces f >= 24; a unique alpha beta^2, alpha gamma^2 or alpha delta^2 forces f >= 16.
PAIRS: tuple[CandidatePair, ...] = tuple(
    _group("a3", "ag2 ad2 bg2 bd2", False, 8)
    + _group("a2b", "ag2 ad2 bd2", False, 8)
    + _group("ad2", "bg2", False, 8)
    + _group("a3", "g4 d4 g3d gd3 g2d2", True, 24)
    + _group("ab2", "g4 d4 g3d gd3 g2d2", True, 16)
    + _group("ag2", "a4 b4 d4 a3b ab3 a2b2 a2d2 b2d2 abd2", True, 16)
    + _group("ad2", "a4 b4 g4 a3b ab3 a2b2 a2g2 b2g2 abg2", True, 16)
)


def find_pair(first: str | VertexCombo, second: str | VertexCombo) -> CandidatePair:
    a = first if isinstance(first, VertexCombo) else V(first)
    b = second if isinstance(second, VertexCombo) else V(second)
    for p in PAIRS:
        if {p.first, p.second} == {a, b}:
            return p
    raise KeyError(f"{{{a}, {b}}} is not a candidate pair")
