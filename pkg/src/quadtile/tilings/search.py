"""Backtracking search for tilings with prescribed vertex types.

Tiles are glued side by side.  Corners glued together form vertex classes
(kept in a union-find); a class is finished once every side around it is
glued, and its angle counts must then be one of the allowed vertex types.
At each step the open side with the fewest continuations is glued either
to another open side of the same edge type or to a fresh tile.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from ..angles import DomainError
from ..geometry import TileKind
from ..vertices import VertexCombo
from .model import CCW_LABELS, Orientation, Tile, TilingMap, edge_type

_ORIENTS = (Orientation.CCW, Orientation.CW)
Side = tuple[int, int]  # (tile, counterclockwise side index)


@dataclass
class _State:
    orient: list[Orientation]
    parent: list[int]  # union-find over corners 4*tile + label
    counts: dict[int, tuple[int, int, int, int]]  # class root -> angle counts
    ends: dict[int, int]  # class root -> glued edges at the vertex
    tiles_of: dict[int, frozenset[int]]  # class root -> tiles with a corner there
    open: list[Side]
    closed: Counter[VertexCombo]

    def copy(self) -> _State:
        return _State(
            list(self.orient), list(self.parent), dict(self.counts), dict(self.ends),
            dict(self.tiles_of), list(self.open), Counter(self.closed),
        )

    def find(self, c: int) -> int:
        while self.parent[c] != c:
            c = self.parent[c]
        return c


class TilingSearch:
    """Search for tilings of the sphere by ``f`` tiles whose vertices are drawn from ``vertex_types``.

    ``budget`` caps how often each vertex type appears; when every type has
    a budget, finished tilings must meet it exactly.  ``required`` types must
    appear at least once.
    """

    def __init__(
        self,
        f: int,
        tile_kind: TileKind,
        vertex_types: Sequence[VertexCombo],
        budget: Mapping[VertexCombo, int] | None = None,
        required: Sequence[VertexCombo] = (),
    ) -> None:
        if f < 6 or f % 2:
            raise DomainError("f must be even and at least 6")
        self.f = f
        self.kind = tile_kind
        self.types = frozenset(vertex_types)
        self.budget = dict(budget) if budget else None
        self.required = tuple(required)
        self.exact = self.budget is not None and set(self.budget) >= set(self.types)
        self.partial: set[tuple[int, ...]] = set()
        for t in self.types:
            for a in range(t.m + 1):
                for b in range(t.n + 1):
                    for c in range(t.k + 1):
                        for d in range(t.l + 1):
                            self.partial.add((a, b, c, d))
        self.nodes = 0

    # -- helpers -----------------------------------------------------------

    def _ends_of(self, s: _State, side: Side) -> tuple[int, int, str]:
        """Start corner, end corner and edge type of a side."""
        t, i = side
        labels = CCW_LABELS[s.orient[t]]
        a, b = labels[i], labels[(i + 1) % 4]
        return 4 * t + a, 4 * t + b, edge_type(self.kind, a, b)

    def _closable(self, s: _State, counts: tuple[int, ...]) -> bool:
        v = VertexCombo(*counts)
        if v not in self.types:
            return False
        return self.budget is None or v not in self.budget or s.closed[v] < self.budget[v]

    def _new_tile(self, s: _State, orient: Orientation) -> int:
        t = len(s.orient)
        s.orient.append(orient)
        for label in range(4):
            c = 4 * t + label
            s.parent.append(c)
            counts = [0, 0, 0, 0]
            counts[label] = 1
            s.counts[c] = tuple(counts)  # type: ignore[assignment]
            s.ends[c] = 0
            s.tiles_of[c] = frozenset((t,))
        s.open.extend((t, i) for i in range(4))
        return t

    def _union(self, s: _State, x: int, y: int) -> int | None:
        rx, ry = s.find(x), s.find(y)
        if rx == ry:
            return rx
        if s.tiles_of[rx] & s.tiles_of[ry]:
            return None  # a tile would meet the vertex twice
        counts = tuple(p + q for p, q in zip(s.counts[rx], s.counts[ry]))
        if counts not in self.partial:
            return None
        s.parent[ry] = rx
        s.counts[rx] = counts  # type: ignore[assignment]
        s.ends[rx] += s.ends.pop(ry)
        s.tiles_of[rx] = s.tiles_of[rx] | s.tiles_of.pop(ry)
        del s.counts[ry]
        return rx

    def _glue(self, s: _State, sigma: Side, tau: Side, in_place: bool = False) -> _State | None:
        """Glue two open sides, reversing one against the other."""
        a, b, k1 = self._ends_of(s, sigma)
        c, d, k2 = self._ends_of(s, tau)
        if k1 != k2:
            return None
        new = s if in_place else s.copy()
        r1 = self._union(new, a, d)
        if r1 is None:
            return None
        r2 = self._union(new, b, c)
        if r2 is None:
            return None
        r1 = new.find(r1)
        if r1 == r2:
            return None
        new.open.remove(sigma)
        new.open.remove(tau)
        for r in (r1, r2):
            new.ends[r] += 1
            if new.ends[r] == sum(new.counts[r]):
                if not self._closable(new, new.counts[r]):
                    return None
                new.closed[VertexCombo(*new.counts[r])] += 1
        return new

    def _options(self, s: _State, sigma: Side) -> list[_State]:
        out = []
        t0 = sigma[0]
        # sides of the same tile last: they rarely glue
        ranked = sorted((tau for tau in s.open if tau != sigma), key=lambda tau: tau[0] == t0)
        for tau in ranked:
            g = self._glue(s, sigma, tau)
            if g is not None:
                out.append(g)
        if len(s.orient) < self.f:
            for o in _ORIENTS:
                for j in range(4):
                    new = s.copy()
                    t = self._new_tile(new, o)
                    g = self._glue(new, sigma, (t, j), in_place=True)
                    if g is not None:
                        out.append(g)
        return out

    def _start(self) -> _State:
        s = _State([], [], {}, {}, {}, [], Counter())
        self._new_tile(s, Orientation.CCW)
        return s

    def _finished(self, s: _State) -> bool:
        if len(s.orient) != self.f:
            return False
        if self.exact and any(s.closed[v] != self.budget.get(v, 0) for v in self.types):  # type: ignore[union-attr]
            return False
        return all(s.closed[v] > 0 for v in self.required)

    def _over_budget(self, s: _State) -> bool:
        if self.budget is None:
            return False
        return any(n > self.budget.get(v, n) for v, n in s.closed.items())

    # -- driver ------------------------------------------------------------

    def solutions(self, limit: int | None = None) -> Iterator[TilingMap]:
        found = 0
        stack = [self._start()]
        while stack:
            s = stack.pop()
            self.nodes += 1
            if not s.open:
                if self._finished(s):
                    m = self._to_map(s)
                    if m is not None:
                        yield m
                        found += 1
                        if limit is not None and found >= limit:
                            return
                continue
            if self._over_budget(s):
                continue
            best: list[_State] | None = None
            for sigma in s.open:
                opts = self._options(s, sigma)
                if best is None or len(opts) < len(best):
                    best = opts
                    if len(opts) <= 1:
                        break
            stack.extend(reversed(best or []))

    def first(self) -> TilingMap | None:
        return next(self.solutions(limit=1), None)

    def _to_map(self, s: _State) -> TilingMap | None:
        tiles = tuple(
            Tile(t, o, tuple(s.find(4 * t + label) for label in range(4)))  # type: ignore[arg-type]
            for t, o in enumerate(s.orient)
        )
        m = TilingMap(self.f, self.kind, tiles).canonical()
        if len(m.vertices) != self.f + 2:
            return None  # not a sphere
        sides = [(u, v) for t in m.tiles for u, v, _, _ in t.ccw_sides()]
        if len(set(sides)) != len(sides):
            return None
        return m


def search_tiling(
    f: int,
    tile_kind: TileKind,
    vertices: Mapping[VertexCombo, int] | Sequence[VertexCombo],
    required: Sequence[VertexCombo] = (),
) -> TilingMap | None:
    """First tiling found with exactly the given vertex counts (a mapping) or drawn from a vertex set."""
    if isinstance(vertices, Mapping):
        return TilingSearch(f, tile_kind, list(vertices), budget=vertices, required=required).first()
    return TilingSearch(f, tile_kind, vertices, required=required).first()
