"""Exact linear algebra over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Row = Sequence[Fraction]


def rref(rows: Sequence[Row], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of the first ``ncols`` columns (extra columns ride along)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Row]) -> int:
    if not rows:
        return 0
    return len(rref(rows, len(rows[0]))[1])


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    m, pivots = rref(rows, ncols) if rows else ([], [])
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][free]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class AffineSpace:
    """``point + span(directions)``."""

    point: tuple[Fraction, ...]
    directions: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    def at(self, params: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = list(self.point)
        for t, d in zip(params, self.directions):
            out = [x + t * y for x, y in zip(out, d)]
        return tuple(out)

    def intersect(self, equations: Sequence[Row]) -> AffineSpace | None:
        """Restrict to ``coeffs @ x = rhs`` for each row ``(*coeffs, rhs)``."""
        n = self.dim
        reduced = []
        for eq in equations:
            coeffs, rhs = eq[:-1], eq[-1]
            base = sum((c * p for c, p in zip(coeffs, self.point)), Fraction(0))
            row = [sum((c * d for c, d in zip(coeffs, dvec)), Fraction(0)) for dvec in self.directions]
            reduced.append(row + [rhs - base])
        sub = solve_affine(reduced, n)
        if sub is None:
            return None
        point = self.at(sub.point)
        directions = []
        for dvec in sub.directions:
            directions.append(tuple(
                sum((t * d[i] for t, d in zip(dvec, self.directions)), Fraction(0))
                for i in range(len(self.point))
            ))
        return AffineSpace(point, tuple(directions))


def solve_affine(equations: Sequence[Row], ncols: int) -> AffineSpace | None:
    """All solutions of ``coeffs @ x = rhs``; ``None`` when inconsistent."""
    if not equations:
        basis = [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
        return AffineSpace(tuple(Fraction(0) for _ in range(ncols)), tuple(basis))
    m, pivots = rref(equations, ncols)
    for i in range(len(pivots), len(m)):
        if m[i][ncols] != 0:
            return None
    point = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        point[p] = m[i][ncols]
    basis = nullspace([r[:ncols] for r in m[: len(pivots)]], ncols) if pivots else nullspace([], ncols)
    return AffineSpace(tuple(point), tuple(tuple(v) for v in basis))


def whole_space(ncols: int) -> AffineSpace:
    return solve_affine([], ncols)  # type: ignore[return-value]
