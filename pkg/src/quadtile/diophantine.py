"""Vertices allowed when some angle is not a rational multiple of pi.

With the quadrilateral sum and two vertex sums fixed, a further vertex
``α^m β^n γ^k δ^l`` keeps the angles non-rational only if the 4x4 angle-sum
system is singular and still consistent.  That gives two integer conditions
on ``x = (m, n, k, l)``:

* ``λ(x) = 0``: the row lies in the span of the three fixed rows;
* ``A(x) f + B(x) = 0``: the right-hand side is compatible.

``A`` is affine and ``B`` linear in ``x``.  Splitting on the sign of ``A``
gives finitely many points plus one-parameter rays, found with exact
integer arithmetic and box bounds from small linear programs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .angles import DomainError
from .linalg import nullspace
from .pairs import PAIRS, CandidatePair
from .catalog import EARTH_MAP_SHAPES, AvcRow
from .patterns import VertexPattern, set_within
from .vertices import EXPONENT_CAP, VertexCombo, sort_vertices

Vec = tuple[int, int, int, int]
QUAD_ROW: Vec = (1, 1, 1, 1)


class DegeneratePair(DomainError):
    """The two vertex rows and the quadrilateral row are linearly dependent."""


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _det3(m: Sequence[Sequence[int]]) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _adjugate3(m: Sequence[Sequence[int]]) -> list[list[int]]:
    def minor(i: int, j: int) -> int:
        rows = [r for a, r in enumerate(m) if a != i]
        sub = [[x for b, x in enumerate(r) if b != j] for r in rows]
        return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]

    return [[(-1) ** (i + j) * minor(j, i) for j in range(3)] for i in range(3)]


def _form(coeffs: Sequence[int], const: int = 0, names: str = "mnkl") -> str:
    terms = []
    for c, name in zip(coeffs, names):
        if c:
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(("-" if c < 0 else "+") + mag + name)
    if const:
        terms.append(("-" if const < 0 else "+") + str(abs(const)))
    if not terms:
        return "0"
    text = "".join(terms)
    return text[1:] if text[0] == "+" else text


@dataclass(frozen=True)
class AngleSumSystem:
    """Quadrilateral row, two vertex rows and the generic row ``(m, n, k, l | 2)``."""

    first: VertexCombo
    second: VertexCombo

    def augmented(self, x: Sequence[int], f: int | Fraction) -> list[list[Fraction]]:
        q = Fraction(2) + Fraction(4) / f
        return [
            [*map(Fraction, QUAD_ROW), q],
            [*map(Fraction, self.first), Fraction(2)],
            [*map(Fraction, self.second), Fraction(2)],
            [*map(Fraction, x), Fraction(2)],
        ]


@dataclass(frozen=True)
class DiophantineCondition:
    """``λ(x) = 0`` and ``A(x) f + B(x) = 0`` with ``A(x) = a_lin.x + a_const``, ``B(x) = b_lin.x``."""

    pair: CandidatePair
    lam: Vec
    a_lin: Vec
    a_const: int
    b_lin: Vec

    def lam_at(self, x: Sequence[int]) -> int:
        return _dot(self.lam, x)

    def a_at(self, x: Sequence[int]) -> int:
        return _dot(self.a_lin, x) + self.a_const

    def b_at(self, x: Sequence[int]) -> int:
        return _dot(self.b_lin, x)

    def holds(self, x: Sequence[int], f: int | Fraction) -> bool:
        return self.lam_at(x) == 0 and self.a_at(x) * f + self.b_at(x) == 0

    def f_of(self, x: Sequence[int]) -> Fraction | None:
        """The face count forced by ``x``; ``None`` when ``A(x) = 0``."""
        a = self.a_at(x)
        return None if a == 0 else Fraction(-self.b_at(x), a)

    def lambda_text(self) -> str:
        return _form(self.lam)

    def mu_text(self) -> str:
        """``μ = A + B/f`` written out."""
        return f"({_form(self.a_lin, self.a_const)}) + ({_form(self.b_lin)})/f"

    def __str__(self) -> str:
        return f"{self.pair}: λ = {self.lambda_text()} = 0, ({_form(self.a_lin, self.a_const)})f + ({_form(self.b_lin)}) = 0"


def _primitive(vals: Sequence[int]) -> list[int]:
    g = math.gcd(*vals)
    return [v // g for v in vals] if g else list(vals)


def nonrationality_conditions(pair: CandidatePair) -> DiophantineCondition:
    """Derive ``λ`` and ``μ`` for a vertex pair by fraction-free elimination.

    Write the generic row as ``a*q + b*r1 + c*r2`` on three independent
    columns.  Cramer's rule with the integer adjugate gives ``D*(a, b, c)``
    as integer forms in ``x``, and consistency reads
    ``a(2 + 4/f) + 2b + 2c = 2``.
    """
    rows = [QUAD_ROW, tuple(pair.first), tuple(pair.second)]
    for cols in combinations(range(4), 3):
        s = [[rows[i][c] for c in cols] for i in range(3)]
        det = _det3(s)
        if det:
            break
    else:
        raise DegeneratePair(f"{pair} is dependent on the quadrilateral row")
    null = nullspace([list(map(Fraction, r)) for r in rows], 4)
    lcm = math.lcm(*(v.denominator for v in null[0]))
    lam = _primitive([int(v * lcm) for v in null[0]])
    if next(v for v in lam if v) < 0:
        lam = [-v for v in lam]
    # (a, b, c) * det = adj(S^T) @ x[cols]; each entry is an integer form in x.
    adj = _adjugate3([list(col) for col in zip(*s)])
    coef = []
    for r in adj:
        full = [0, 0, 0, 0]
        for c, v in zip(cols, r):
            full[c] = v
        coef.append(full)
    ca, cb, cc = coef
    # f * det * mu = (2a' + 2b' + 2c' - 2 det) f + 4a'
    a_lin = [2 * (x + y + z) for x, y, z in zip(ca, cb, cc)]
    a_const = -2 * det
    b_lin = [4 * x for x in ca]
    sign = 1 if det > 0 else -1
    vals = _primitive([sign * v for v in (*a_lin, a_const, *b_lin)])
    return DiophantineCondition(pair, tuple(lam), tuple(vals[:4]), vals[4], tuple(vals[5:]))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Integer points of small polyhedra


@dataclass(frozen=True)
class _Poly:
    """``{x >= 0 : eq @ x == eq_rhs, ub @ x <= ub_rhs}``."""

    eq: tuple[Vec, ...]
    eq_rhs: tuple[int, ...]
    ub: tuple[Vec, ...]
    ub_rhs: tuple[int, ...]

    def contains(self, x: Sequence[int]) -> bool:
        return (
            all(v >= 0 for v in x)
            and all(_dot(r, x) == b for r, b in zip(self.eq, self.eq_rhs))
            and all(_dot(r, x) <= b for r, b in zip(self.ub, self.ub_rhs))
        )

    def box(self) -> list[tuple[int, int]] | None:
        """Integer bounds per coordinate, ``None`` when empty; raises when unbounded."""
        out = []
        for i in range(4):
            lo_hi = []
            for sense in (1, -1):
                c = np.zeros(4)
                c[i] = sense
                res = linprog(
                    c,
                    A_ub=np.array(self.ub, dtype=float) if self.ub else None,
                    b_ub=np.array(self.ub_rhs, dtype=float) if self.ub else None,
                    A_eq=np.array(self.eq, dtype=float) if self.eq else None,
                    b_eq=np.array(self.eq_rhs, dtype=float) if self.eq else None,
                    bounds=[(0, None)] * 4,
                    method="highs",
                )
                if res.status == 2:
                    return None
                if res.status == 3:
                    raise RuntimeError("unbounded region where a bounded one was expected")
                lo_hi.append(sense * res.fun)
            out.append((max(0, math.ceil(lo_hi[0] - 1e-7)), math.floor(lo_hi[1] + 1e-7)))
        return out

    def points(self, lam: Vec) -> list[Vec]:
        box = self.box()
        if box is None:
            return []
        # Walk three coordinates; solve the fourth from lam @ x = 0.
        j = max(range(4), key=lambda i: (lam[i] != 0, -(box[i][1] - box[i][0])))
        others = [i for i in range(4) if i != j]
        found = []
        for vals in product(*(range(box[i][0], box[i][1] + 1) for i in others)):
            x = [0, 0, 0, 0]
            for i, v in zip(others, vals):
                x[i] = v
            rest = -_dot(lam, x)
            if rest % lam[j]:
                continue
            x[j] = rest // lam[j]
            if self.contains(x):
                found.append(tuple(x))
        return sorted(found)  # type: ignore[return-value]


def _extreme_rays(lam: Vec, ineqs: Sequence[Vec]) -> list[Vec]:
    """Extreme rays of ``{r >= 0 : lam @ r = 0, g @ r <= 0 for g in ineqs}`` as primitive integer vectors."""
    cons = [tuple(-int(i == j) for j in range(4)) for i in range(4)] + [tuple(g) for g in ineqs]
    rays = set()
    for a, b in combinations(cons, 2):
        basis = nullspace([list(map(Fraction, r)) for r in (lam, a, b)], 4)
        if len(basis) != 1:
            continue
        lcm = math.lcm(*(v.denominator for v in basis[0]))
        vec = _primitive([int(v * lcm) for v in basis[0]])
        for cand in (vec, [-v for v in vec]):
            if any(cand) and all(_dot(g, cand) <= 0 for g in cons):
                rays.add(tuple(cand))
    return sorted(rays)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Families


@dataclass(frozen=True)
class Ray:
    """Vertices ``base + t*direction`` for ``t >= 0`` at ``f = f0 + t*step``."""

    base: VertexCombo
    direction: VertexCombo
    f0: Fraction
    step: Fraction

    def member_at(self, f: int) -> VertexCombo | None:
        t = (f - self.f0) / self.step
        if t < 0 or t.denominator != 1:
            return None
        return VertexCombo(*(b + int(t) * d for b, d in zip(self.base, self.direction)))

    def pattern(self) -> VertexPattern:
        """Exponents along the direction become free symbols; equal steps share one."""
        specs: list[int | str] = list(self.base)
        names: dict[tuple[int, int], str] = {}
        for i in range(4):
            if self.direction[i]:
                specs[i] = names.setdefault((self.base[i], self.direction[i]), "mnkl"[i])
        return VertexPattern(tuple(specs))  # type: ignore[arg-type]

    def __str__(self) -> str:
        return f"{self.base} + t·{self.direction} (f = {self.f0} + {self.step}t)"


@dataclass(frozen=True)
class SignCase:
    """One branch of the case split on the sign of ``A``, with its face count formula."""

    sign: int
    f_expression: str
    finite: tuple[tuple[VertexCombo, Fraction], ...]
    rays: tuple[Ray, ...]


@dataclass(frozen=True)
class VertexFamily:
    condition: DiophantineCondition
    threshold: int
    any_f: tuple[VertexCombo, ...]
    cases: tuple[SignCase, ...]

    @property
    def finite(self) -> tuple[tuple[VertexCombo, Fraction], ...]:
        return tuple(p for c in self.cases for p in c.finite)

    @property
    def rays(self) -> tuple[Ray, ...]:
        return tuple(r for c in self.cases for r in c.rays)

    def finite_fs(self) -> list[int]:
        return sorted({int(f) for _, f in self.finite if f.denominator == 1 and f % 2 == 0})

    def instantiate(self, f: int, cap: int = EXPONENT_CAP) -> frozenset[VertexCombo]:
        """Members at face count ``f`` with even ``k + l``, degree >= 3 and exponents <= cap."""
        out = set(self.any_f)
        out.update(v for v, g in self.finite if g == f)
        for ray in self.rays:
            v = ray.member_at(f)
            if v is not None:
                out.add(v)
        return frozenset(v for v in out if _admissible(v) and max(v) <= cap)

    def ray_patterns(self) -> tuple[VertexPattern, ...]:
        seen: list[VertexPattern] = []
        for r in self.rays:
            p = r.pattern()
            if p not in seen:
                seen.append(p)
        return tuple(seen)


def _admissible(x: Sequence[int]) -> bool:
    return (x[2] + x[3]) % 2 == 0 and sum(x) >= 3


def solve_vertex_families(cond: DiophantineCondition, threshold: int) -> VertexFamily:
    """All nonnegative ``x`` meeting the conditions for some even ``f >= threshold``.

    ``A(x) = 0`` forces ``B(x) = 0`` and the point works for every f.
    Otherwise ``f = -B/A`` and ``f >= T`` reads ``s*(B + T*A) <= 0`` where
    ``s`` is the sign of ``A``.  An unbounded branch has a single ray with
    ``A`` constant along it; its members are enumerated from the minimal
    bases.
    """
    lam, al, ac, bl, t = cond.lam, cond.a_lin, cond.a_const, cond.b_lin, threshold
    zero = _Poly((lam, al, bl), (0, -ac, 0), (), ())
    any_f = tuple(VertexCombo(*x) for x in zero.points(lam) if _admissible(x))
    btl = tuple(b + t * a for a, b in zip(al, bl))
    cases = []
    for s in (1, -1):
        neg = tuple(-s * a for a in al)
        ub = (neg, tuple(s * v for v in btl))
        ub_rhs = (s * ac - 1, -s * t * ac)
        poly = _Poly((lam,), (0,), ub, ub_rhs)
        rays = _extreme_rays(lam, ub)
        expr = f"f = {t} + ({_form([-v for v in btl], -t * ac)})/({_form(al, ac)})"
        if not rays:
            finite = tuple((VertexCombo(*x), cond.f_of(x)) for x in poly.points(lam))
            cases.append(SignCase(s, expr, finite, ()))  # type: ignore[arg-type]
            continue
        if len(rays) > 1:
            raise RuntimeError(f"{cond.pair}: more than one ray direction")
        r = rays[0]
        if _dot(al, r) != 0 or _dot(bl, r) == 0:
            raise RuntimeError(f"{cond.pair}: ray {r} changes A or keeps f fixed")
        bases: set[Vec] = set()
        for i in range(4):
            if r[i]:
                cap = tuple(int(j == i) for j in range(4))
                sub = _Poly((lam,), (0,), ub + (cap,), ub_rhs + (r[i] - 1,))
                bases.update(sub.points(lam))
        flip = tuple(-s * v for v in btl)
        sub = _Poly((lam,), (0,), ub + (flip,), ub_rhs + (-s * _dot(btl, r) + s * t * ac - 1,))
        bases.update(sub.points(lam))
        out_rays = []
        for b in sorted(bases):
            if (r[2] + r[3]) % 2 == 0 and (b[2] + b[3]) % 2:
                continue  # gamma + delta stays odd along the whole ray
            f0 = cond.f_of(b)
            step = Fraction(-_dot(bl, r), cond.a_at(b))
            out_rays.append(Ray(VertexCombo(*b), VertexCombo(*r), f0, step))  # type: ignore[arg-type]
        cases.append(SignCase(s, expr, (), tuple(out_rays)))
    return VertexFamily(cond, threshold, any_f, tuple(cases))


# ---------------------------------------------------------------------------
# Classification without alpha-gamma-delta


@dataclass(frozen=True)
class NonRationalRow:
    """An AVC row: fixed vertices plus parametric patterns, at one f or for all ``f >= f_min``."""

    pair: CandidatePair | None
    f: int | None
    f_min: int | None
    fixed: frozenset[VertexCombo]
    families: tuple[VertexPattern, ...] = ()
    note: str = ""

    def label(self) -> str:
        parts = [v.label() for v in sort_vertices(self.fixed)] + [p.label() for p in self.families]
        where = f"f={self.f}" if self.f is not None else f"f>={self.f_min}"
        return f"{where} {{{', '.join(parts)}}}"

    def vertices_at(self, f: int, family: VertexFamily | None = None) -> frozenset[VertexCombo]:
        if family is None:
            raise DomainError("instantiating a parametric row needs its vertex family")
        return family.instantiate(f)

    def is_instance(self, f: int, vertices: Iterable[VertexCombo], respect_threshold: bool = True) -> bool:
        """``vertices`` at ``f`` looks like this row: fixed part present, the rest matching its patterns."""
        vs = frozenset(vertices)
        if self.f is not None:
            return self.f == f and vs == self.fixed
        if respect_threshold and f < (self.f_min or 0):
            return False
        rest = vs - self.fixed
        return self.fixed <= vs and bool(rest) and all(any(p.matches(v, f) for p in self.families) for v in rest)

    def mirror(self) -> frozenset[VertexCombo]:
        return frozenset(v.mirror() for v in self.fixed)

    def __str__(self) -> str:
        return self.label()


def _mirror(vs: Iterable[VertexCombo]) -> frozenset[VertexCombo]:
    return frozenset(v.mirror() for v in vs)


def nonrational_families(pairs: Sequence[CandidatePair] = PAIRS) -> dict[CandidatePair, VertexFamily]:
    return dict(_families(tuple(pairs)))


@cache
def _families(pairs: tuple[CandidatePair, ...]) -> tuple[tuple[CandidatePair, VertexFamily], ...]:
    return tuple((p, solve_vertex_families(nonrationality_conditions(p), p.threshold)) for p in pairs)


def classify_nonrational_pairs(f: int | None = None) -> list[NonRationalRow]:
    """AVC rows when alpha-gamma-delta is not a vertex.

    Rays give rows valid for every ``f`` at or above the pair's threshold.
    Isolated solutions give one row per face count.  A per-f row is folded
    away when it is an instance of a ray row, or when its mirror image is
    (the mirror test ignores the threshold).  With ``f`` given, only rows
    valid at that f are returned.
    """
    fams = nonrational_families()
    ray_rows = []
    for p, fam in fams.items():
        if fam.rays:
            ray_rows.append(NonRationalRow(p, None, p.threshold, frozenset(fam.any_f), fam.ray_patterns()))
    fixed_rows = []
    for p, fam in fams.items():
        for g in fam.finite_fs():
            vs = fam.instantiate(g)
            if vs == frozenset(p.vertices):
                continue
            if any(r.is_instance(g, vs) or r.is_instance(g, _mirror(vs), respect_threshold=False) for r in ray_rows):
                continue
            fixed_rows.append(NonRationalRow(p, g, None, vs))
    rows = fixed_rows + ray_rows
    if f is None:
        return rows
    return [r for r in rows if (r.f == f if r.f is not None else f >= (r.f_min or 0))]


# ---------------------------------------------------------------------------
# Classification with alpha-gamma-delta

# beta = 4pi/f is rational once alpha + gamma + delta = 2pi, so the
# non-rational angles are at least two of alpha, gamma, delta.
AGD_SUBCASES = ("gd", "ag", "ad", "agd")


@dataclass(frozen=True)
class AgdCase:
    """Full AVC, as patterns, when exactly the angles in ``nonrational`` are not rational."""

    nonrational: str
    avc: tuple[VertexPattern, ...]
    reduced_by_counting: bool


def _shape_pattern(on: Sequence[int], nonrational: str) -> VertexPattern:
    specs: list[int | str] = [SYMBOL if x else 0 for SYMBOL, x in zip("mnkl", on)]
    tied = [i for i in ("abgd".index(c) for c in nonrational) if on[i]]
    for i in tied:
        specs[i] = specs[tied[0]]
    return VertexPattern(tuple(specs))  # type: ignore[arg-type]


def _pattern_le(p: VertexPattern, i: int, j: int) -> bool:
    """Angle i occurs at most as often as angle j at every instance of ``p``."""
    a, b = p.specs[i], p.specs[j]
    if a == b or a == 0:
        return True
    if isinstance(a, int) and isinstance(b, int):
        return a <= b
    return a == 1 and isinstance(b, str)


def counting_reduce_patterns(pats: Sequence[VertexPattern]) -> tuple[VertexPattern, ...]:
    """The counting reduction of :func:`quadtile.vertices.counting_reduction` on patterns."""
    current = list(pats)
    changed = True
    while changed:
        changed = False
        for i in range(4):
            for j in range(4):
                if i != j and all(_pattern_le(p, i, j) for p in current):
                    kept = [p for p in current if p.specs[i] == p.specs[j]]
                    if kept != current:
                        current, changed = kept, True
    return tuple(current)


def agd_case(nonrational: str) -> AgdCase:
    """Vertex shapes when alpha-gamma-delta is a vertex and ``nonrational`` lists the non-rational angles.

    The non-rational parts cancel at a vertex only if those angles occur
    equally often, since their only relation is alpha + gamma + delta = 2pi.
    A b-vertex holding alpha is alpha-gamma-delta itself: with all three
    present the sum is used up, and alpha next to a single one of gamma,
    delta needs alpha^2 at a b-vertex or breaks parity.  Counting then
    removes shapes, and a lone ``beta^n`` next to alpha-gamma-delta is
    ``beta^(f/2)`` because beta = 4pi/f.
    """
    if nonrational not in AGD_SUBCASES:
        raise DomainError(f"unsupported non-rational set {nonrational!r}")
    idx = ["abgd".index(c) for c in nonrational]
    shapes = []
    for on in product((0, 1), repeat=4):
        if not any(on) or len({on[i] for i in idx}) > 1:
            continue
        m, n, k, l = on  # noqa: E741
        if m and (k or l):
            if k and l and not n:
                shapes.append(VertexPattern.of(VertexCombo(1, 0, 1, 1)))
            continue
        shapes.append(_shape_pattern(on, nonrational))
    reduced = counting_reduce_patterns(shapes)
    if len(reduced) == 2 and VertexPattern((0, "n", 0, 0)) in reduced:
        reduced = (VertexPattern.of(VertexCombo(1, 0, 1, 1)), VertexPattern((0, "f/2", 0, 0)))
    return AgdCase(nonrational, reduced, len(reduced) < len(shapes))


def agd_rows() -> list[tuple[AvcRow, tuple[str, ...]]]:
    """Earth map AVC shapes compatible with some non-rational sub-case, with those sub-cases."""
    cases = [agd_case(c) for c in AGD_SUBCASES]
    out = []
    for row in EARTH_MAP_SHAPES:
        fits = tuple(c.nonrational for c in cases if set_within(row.vertices, c.avc))
        if fits:
            out.append((row, fits))
    return out


@dataclass(frozen=True)
class NonRationalResult:
    without_agd: tuple[NonRationalRow, ...]
    with_agd: tuple[AvcRow, ...]


def classify_nonrational(f: int | None = None) -> NonRationalResult:
    """Both non-rational branches; ``f=None`` keeps every row, an even ``f`` keeps rows valid there."""
    if f is not None and (f % 2 or f < 6):
        raise DomainError("f must be an even integer >= 6")
    agd = tuple(row for row, _ in agd_rows() if f is None or row.applies_at(f))
    return NonRationalResult(tuple(classify_nonrational_pairs(f)), agd)
