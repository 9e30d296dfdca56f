"""The six-tile case: every vertex has degree three.

All labelled maps of six a³b tiles are enumerated; each vertex set is kept
when its angle-sum system has a solution compatible with the tile, namely
positive angles, α ≠ β, and α ≥ β exactly when γ ≥ δ.  Vertex sets are
reported up to the mirror relabelling α↔β, γ↔δ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ..geometry import TileKind
from ..vertices import VertexCombo
from .model import TilingMap, canonical_code
from .search import TilingSearch

F = 6
DEGREE_THREE = tuple(
    VertexCombo(m, n, k, 3 - m - n - k)
    for m in range(4)
    for n in range(4 - m)
    for k in range(4 - m - n)
    if (k + (3 - m - n - k)) % 2 == 0
)


@dataclass(frozen=True)
class MinimalTiling:
    vertices: frozenset[VertexCombo]
    tiling: TilingMap
    angles: tuple[float, float, float, float]  # a witness, in pi units


def _witness(vertices: frozenset[VertexCombo]) -> tuple[float, ...] | None:
    """Angles (pi units) solving the system with α - β and γ - δ of one sign, bounded away from zero."""
    eq = [list(v) for v in sorted(vertices)] + [[1, 1, 1, 1]]
    rhs = [2.0] * len(vertices) + [2 + 4 / F]
    for sign in (1, -1):
        # variables: alpha, beta, gamma, delta, t ; maximise t
        a_eq = [row + [0] for row in eq]
        a_ub = [
            [-sign, sign, 0, 0, 1],  # t <= sign (alpha - beta)
            [0, 0, -sign, sign, 1],  # t <= sign (gamma - delta)
        ] + [[-int(i == j) for j in range(4)] + [1] for i in range(4)]  # t <= angle
        res = linprog(
            c=[0, 0, 0, 0, -1], A_ub=a_ub, b_ub=[0] * 6, A_eq=a_eq, b_eq=rhs,
            bounds=[(0, 2)] * 4 + [(None, 1)], method="highs",
        )
        if res.status == 0 and res.x[4] > 1e-9:
            return tuple(float(x) for x in np.round(res.x[:4], 12))
    return None


def _normal(vertices: frozenset[VertexCombo]) -> frozenset[VertexCombo]:
    mirror = frozenset(v.mirror() for v in vertices)
    agd = VertexCombo(1, 0, 1, 1)
    if agd in vertices:
        return vertices
    if agd in mirror:
        return mirror
    return min(vertices, mirror, key=lambda s: sorted(s))


def classify_minimal() -> list[MinimalTiling]:
    """Vertex sets of six-tile a³b tilings that survive the angle constraints."""
    search = TilingSearch(F, TileKind.A3B, DEGREE_THREE)
    seen: dict[frozenset[VertexCombo], MinimalTiling] = {}
    codes: set[tuple] = set()
    for m in search.solutions():
        code = canonical_code(m)
        if code in codes:
            continue
        codes.add(code)
        vs = frozenset(m.vertex_multiset())
        key = _normal(vs)
        if key in seen:
            continue
        w = _witness(vs)
        if w is not None:
            seen[key] = MinimalTiling(key, m, w)  # type: ignore[arg-type]
    return sorted(seen.values(), key=lambda r: sorted(r.vertices))
