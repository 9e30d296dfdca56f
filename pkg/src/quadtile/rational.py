"""Rational angle assignments from the trigonometric equation sin x1 sin x2 = sin x3 sin x4.

The four angles of an almost equilateral quadrilateral satisfy

    sin(alpha/2) sin(delta - beta/2) = sin(beta/2) sin(gamma - alpha/2).

When every angle is a rational multiple of pi, the rational solutions of
``sin x1 sin x2 = sin x3 sin x4`` with ``x_i`` in ``[0, pi/2]`` are known: two
trivial shapes (type I), a one-parameter family (type II), and fifteen
sporadic rows (type III), each up to eight symmetries.  Matching them against
the recalibrated angle expressions, together with the quadrilateral angle sum
and two vertex angle sums, gives finitely many exact linear systems.

Unknowns are ordered ``(alpha, beta, gamma, delta, theta, u)`` with ``u = 1/f``,
all in units of pi.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .angles import AngleExpr, DomainError
from .linalg import AffineSpace, solve_affine
from .pairs import AGD, PAIRS, CandidatePair
from .catalog import RATIONAL_AGD_TABLE, AvcRow
from .patterns import pattern_choices
from .vertices import (
    AVC,
    CountVector,
    VertexCombo,
    VertexFilter,
    balance_filter,
    count_feasibility,
    counting_reduction,
    enumerate_vertices,
    format_vertices,
    V,
)

F = Fraction
H = F(1, 2)
NUM_UNKNOWNS = 6  # alpha, beta, gamma, delta, theta, u
THETA, U = 4, 5

# ---------------------------------------------------------------------------
# Constant data

MYERSON_ROWS: tuple[tuple[Fraction, Fraction, Fraction, Fraction], ...] = tuple(
    tuple(F(x) for x in row.split())  # type: ignore[misc]
    for row in (
        "1/21 8/21 1/14 3/14",
        "1/14 5/14 2/21 5/21",
        "4/21 10/21 3/14 5/14",
        "1/20 9/20 1/15 4/15",
        "2/15 7/15 3/20 7/20",
        "1/30 3/10 1/15 2/15",
        "1/15 7/15 1/10 7/30",
        "1/10 13/30 2/15 4/15",
        "4/15 7/15 3/10 11/30",
        "1/30 11/30 1/10 1/10",
        "7/30 13/30 3/10 3/10",
        "1/15 4/15 1/10 1/6",
        "2/15 7/15 1/6 3/10",  # x2 is 7/15; older tables print 8/15
        "1/12 5/12 1/10 3/10",
        "1/10 3/10 1/6 1/6",
    )
)

# The symmetries of sin x1 sin x2 = sin x3 sin x4 as index maps.
PERMUTATIONS: tuple[tuple[int, int, int, int], ...] = (
    (0, 1, 2, 3),
    (0, 1, 3, 2),
    (1, 0, 2, 3),
    (1, 0, 3, 2),
    (2, 3, 0, 1),
    (3, 2, 0, 1),
    (2, 3, 1, 0),
    (3, 2, 1, 0),
)


def permute(xs: Sequence, perm: Sequence[int]) -> tuple:
    return tuple(xs[i] for i in perm)


# A type II entry is c + t*theta, stored as (c, t).
TYPE_II_TUPLE: tuple[tuple[Fraction, Fraction], ...] = (
    (F(1, 6), F(0)),
    (F(0), F(1)),
    (F(0), H),
    (H, -H),
)


def type2_tuple(theta: Fraction | float) -> tuple:
    return tuple(c + t * theta for c, t in TYPE_II_TUPLE)


class RangeCase(enum.Enum):
    """Which angle, if any, is at least pi.  At most one can be."""

    CONVEX = "convex"
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"

    @property
    def reflex_index(self) -> int | None:
        return None if self is RangeCase.CONVEX else ["alpha", "beta", "gamma", "delta"].index(self.value)

    def mirror(self) -> RangeCase:
        swap = {"alpha": "beta", "beta": "alpha", "gamma": "delta", "delta": "gamma", "convex": "convex"}
        return RangeCase(swap[self.value])

    def holds(self, angles: Sequence[Fraction]) -> bool:
        idx = self.reflex_index
        return all((a >= 1) == (i == idx) for i, a in enumerate(angles))


CASE_ORDER = tuple(RangeCase)


@dataclass(frozen=True)
class Lin:
    """``a*alpha + b*beta + g*gamma + d*delta + c`` in pi units."""

    a: Fraction = F(0)
    b: Fraction = F(0)
    g: Fraction = F(0)
    d: Fraction = F(0)
    c: Fraction = F(0)

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.g, self.d)

    def __call__(self, angles: Sequence) -> Fraction:
        return self.a * angles[0] + self.b * angles[1] + self.g * angles[2] + self.d * angles[3] + self.c

    def __str__(self) -> str:
        parts = []
        for coef, name in zip((self.c, self.a, self.b, self.g, self.d), ("pi", "α", "β", "γ", "δ")):
            if coef == 0:
                continue
            mag = abs(coef)
            body = name if name == "pi" and mag == 1 else (
                f"{mag}{name}" if name == "pi" else (name if mag == 1 else f"{mag}{name}")
            )
            body = body.replace("pi", "π")
            parts.append(("- " if coef < 0 else "+ ") + body)
        text = " ".join(parts) or "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


_TERM = re.compile(r"^([+-]?)(\d*)([abgd]?)(?:/(\d+))?$")


def _lin(text: str) -> Lin:
    """Parse terms like ``g -a/2 +1`` or ``a +2d -2g`` (a bare number counts pi)."""
    vals = {"a": F(0), "b": F(0), "g": F(0), "d": F(0), "c": F(0)}
    for term in text.split():
        match = _TERM.match(term)
        if not match or not (match.group(2) or match.group(3)):
            raise ValueError(f"bad term {term!r}")
        sign, num, name, den = match.groups()
        coef = F(int(num) if num else 1, int(den) if den else 1)
        vals[name or "c"] += -coef if sign == "-" else coef
    return Lin(**vals)


def _rows(*specs: str) -> tuple[tuple[Lin, Lin, Lin, Lin], ...]:
    return tuple(tuple(_lin(x) for x in spec.split(",")) for spec in specs)  # type: ignore[misc]


# Recalibrations: each row maps the angles to (x1, x2, x3, x4) in [0, pi/2]
# for one sub-range of its case.
RECALIBRATIONS: dict[RangeCase, tuple[tuple[Lin, Lin, Lin, Lin], ...]] = {
    RangeCase.CONVEX: _rows(
        "g -a/2, b/2, a/2, d -b/2",
        "a/2 -g, b/2, a/2, b/2 -d",
        "g -a/2, b/2, a/2, 1 +b/2 -d",
        "1 +a/2 -g, b/2, a/2, d -b/2",
        "1 +a/2 -g, b/2, a/2, 1 +b/2 -d",
    ),
    RangeCase.ALPHA: _rows(
        "g -a/2, b/2, 1 -a/2, d -b/2",
        "g -a/2, b/2, 1 -a/2, 1 +b/2 -d",
        "1 -a/2 +g, b/2, 1 -a/2, b/2 -d",
        "a/2 -g, b/2, 1 -a/2, b/2 -d",
    ),
    RangeCase.BETA: _rows(
        "g -a/2, 1 -b/2, a/2, d -b/2",
        "1 +a/2 -g, 1 -b/2, a/2, d -b/2",
        "a/2 -g, 1 -b/2, a/2, 1 -b/2 +d",
        "a/2 -g, 1 -b/2, a/2, b/2 -d",
    ),
    RangeCase.GAMMA: _rows(
        "1 +a/2 -g, b/2, a/2, d -b/2",
        "1 +a/2 -g, b/2, a/2, 1 +b/2 -d",
        "g -a/2 -1, b/2, a/2, b/2 -d",
        "2 +a/2 -g, b/2, a/2, b/2 -d",
    ),
    RangeCase.DELTA: _rows(
        "g -a/2, b/2, a/2, 1 +b/2 -d",
        "1 +a/2 -g, b/2, a/2, 1 +b/2 -d",
        "a/2 -g, b/2, a/2, d -b/2 -1",
        "a/2 -g, b/2, a/2, 2 +b/2 -d",
    ),
}

# Type I relations per case: each entry is a list of ``Lin == 0`` constraints.
TYPE_I_RELATIONS: dict[RangeCase, tuple[tuple[Lin, ...], ...]] = {
    RangeCase.CONVEX: ((_lin("a -2g"), _lin("b -2d")),),
    RangeCase.ALPHA: ((_lin("a -2g"), _lin("b -2d")), (_lin("a +b -2"), _lin("a +2d -b -2g"))),
    RangeCase.BETA: ((_lin("a -2g"), _lin("b -2d")), (_lin("a +b -2"), _lin("a +2d -b -2g"))),
    RangeCase.GAMMA: ((_lin("g -1"), _lin("b -d")), (_lin("a +2 -2g"), _lin("b -2d"))),
    RangeCase.DELTA: ((_lin("d -1"), _lin("a -g")), (_lin("a -2g"), _lin("b +2 -2d"))),
}


def coolsaet_terms(angles: Sequence) -> tuple:
    """``(x1, x2, x3, x4)`` with ``sin x1 sin x2 = sin x3 sin x4`` for any quadrilateral."""
    a, b, g, d = angles
    return (g - a / 2, b / 2, a / 2, d - b / 2)


# ---------------------------------------------------------------------------
# Equation rows over (alpha, beta, gamma, delta, theta, u | rhs)


def _row(angle_coeffs: Sequence[Fraction], theta: Fraction = F(0), u: Fraction = F(0), rhs: Fraction = F(0)) -> tuple:
    return (*[F(x) for x in angle_coeffs], F(theta), F(u), F(rhs))


QUAD_SUM_ROW = _row((1, 1, 1, 1), u=-4, rhs=2)


def vertex_row(v: VertexCombo) -> tuple:
    return _row(v, rhs=2)


def _lin_row(lin: Lin, value_const: Fraction = F(0), value_theta: Fraction = F(0)) -> tuple:
    """``lin(angles) == value_const + value_theta * theta``."""
    return _row(lin.coeffs(), theta=-value_theta, rhs=value_const - lin.c)


# ---------------------------------------------------------------------------
# Assignments


@dataclass(frozen=True)
class Branch:
    kind: str  # "I", "II" or "III"
    case: RangeCase
    detail: str
    recal: tuple[Lin, Lin, Lin, Lin] | None = None
    targets: tuple | None = None  # matched tuple entries as (const, theta coeff)

    def __str__(self) -> str:
        return f"type {self.kind}, {self.case.value}: {self.detail}"


@dataclass(frozen=True)
class AngleAssignment:
    """Four angles, exact and affine in 1/f, with the branch that produced them.

    ``f`` is set when the system pins the face count; otherwise the angles
    form a family valid for each f that passes :func:`validate_angles`.
    """

    angles: tuple[AngleExpr, AngleExpr, AngleExpr, AngleExpr]
    f: int | None
    branch: Branch
    theta: AngleExpr | None = None
    pair: CandidatePair | None = None

    def at(self, f: int | None = None) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        ff = self.f if f is None else f
        if ff is None:
            raise DomainError("a family needs f")
        return tuple(a.pi_units(ff) for a in self.angles)  # type: ignore[return-value]

    def specialize(self, f: int) -> AngleAssignment:
        vals = self.at(f)
        theta = AngleExpr.exact(self.theta.pi_units(f)) if self.theta is not None else None
        return AngleAssignment(tuple(AngleExpr.exact(x) for x in vals), f, self.branch, theta, self.pair)  # type: ignore[arg-type]

    @property
    def is_family(self) -> bool:
        return self.f is None

    def describe(self) -> str:
        return ", ".join(f"{n}={a}" for n, a in zip("αβγδ", self.angles))


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    rule: str = ""
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted


ACCEPT = Verdict(True)


def _reject(rule: str, reason: str) -> Verdict:
    return Verdict(False, rule, reason)


def validate_angles(
    a: AngleAssignment | Sequence[Fraction],
    f: int | None = None,
    case: RangeCase | None = None,
    threshold: int = 8,
) -> Verdict:
    """Accept or reject an assignment at a given f, naming the first failed rule.

    Rules, in order: ``range``, ``distinct``, ``one_reflex``, ``case``,
    ``myerson_range``, ``exchange``, ``lune_estimate``, ``triangle_comparison``,
    ``reflex_gamma``, ``face_count``.
    """
    if isinstance(a, AngleAssignment):
        ff = a.f if f is None else f
        if a.f is not None and f is not None and f != a.f:
            return _reject("face_count", f"assignment needs f={a.f}")
        if ff is None:
            raise DomainError("a family needs f")
        angles = a.at(ff)
        branch: Branch | None = a.branch
        case = case or a.branch.case
        theta = a.theta.pi_units(ff) if a.theta is not None else None
        if a.pair is not None:
            threshold = max(threshold, a.pair.threshold)
    else:
        angles = tuple(F(x) for x in a)
        ff, branch, theta = f, None, None
    al, be, ga, de = angles

    if any(not 0 < x < 2 for x in angles):
        return _reject("range", "every angle must lie in (0, 2pi)")
    if len(set(angles)) < 3:
        return _reject("distinct", "fewer than three distinct angles")
    if sum(x >= 1 for x in angles) > 1:
        return _reject("one_reflex", "more than one angle is at least pi")
    if case is not None and not case.holds(angles):
        return _reject("case", f"angles do not fit the {case.value} case")
    if branch is not None and branch.recal is not None:
        values = [lin(angles) for lin in branch.recal]
        if any(not 0 <= x <= H for x in values):
            return _reject("myerson_range", "recalibrated terms leave [0, pi/2]")
        if theta is not None and not 0 <= theta <= H:
            return _reject("myerson_range", "theta leaves [0, pi/2]")
    if (al > be) - (al < be) != (ga > de) - (ga < de):
        return _reject("exchange", "alpha >= beta must match gamma >= delta")
    if al < 1 and be < 1 and ga < 1 and not (be + 1 > ga + de and de + 1 > be + ga):
        return _reject("lune_estimate", "beta + pi > gamma + delta and delta + pi > beta + gamma fail")
    if al < 1 and be < 1 and de < 1 and not (al + 1 > ga + de and ga + 1 > al + de):
        return _reject("lune_estimate", "alpha + pi > gamma + delta and gamma + pi > alpha + delta fail")
    if ga < 1 and de < 1 and (al > ga) != (be > de):
        return _reject("triangle_comparison", "alpha > gamma must match beta > delta")
    if al < 1 and be < 1 and de < 1 and ga > 1 and not be > de:
        return _reject("reflex_gamma", "gamma > pi needs beta > delta")
    if ff is not None:
        if ff % 2 or ff < threshold:
            return _reject("face_count", f"f={ff} must be even and at least {threshold}")
    return ACCEPT


# ---------------------------------------------------------------------------
# Solving


@dataclass(frozen=True)
class _Base:
    branch: Branch
    space: AffineSpace


def _space_to_assignment(space: AffineSpace, branch: Branch, pair: CandidatePair | None) -> AngleAssignment | None:
    """Read angles affine in u off a solution space; ``None`` if underdetermined or f is not an integer."""
    p = space.point
    if space.dim == 0:
        u = p[U]
        if u <= 0 or (1 / u).denominator != 1:
            return None
        f = int(1 / u)
        angles = tuple(AngleExpr.exact(x) for x in p[:4])
        theta = AngleExpr.exact(p[THETA]) if branch.kind == "II" else None
        return AngleAssignment(angles, f, branch, theta, pair)  # type: ignore[arg-type]
    if space.dim == 1 and space.directions[0][U] != 0:
        d = space.directions[0]
        slope = [x / d[U] for x in d]
        c0 = [p[i] - slope[i] * p[U] for i in range(NUM_UNKNOWNS)]
        angles = tuple(AngleExpr.exact(c0[i], slope[i]) for i in range(4))
        theta = AngleExpr.exact(c0[THETA], slope[THETA]) if branch.kind == "II" else None
        return AngleAssignment(angles, None, branch, theta, pair)  # type: ignore[arg-type]
    return None


@lru_cache(maxsize=None)
def _type1_bases(case: RangeCase) -> tuple[_Base, ...]:
    out = []
    for i, rels in enumerate(TYPE_I_RELATIONS[case]):
        rows = [_lin_row(r) for r in rels] + [QUAD_SUM_ROW, _row((0, 0, 0, 0), theta=1)]
        space = solve_affine(rows, NUM_UNKNOWNS)
        if space is not None:
            detail = " and ".join(f"{r} = 0" for r in rels)
            out.append(_Base(Branch("I", case, detail), space))
    return tuple(out)


@lru_cache(maxsize=None)
def _type2_bases(case: RangeCase) -> tuple[_Base, ...]:
    out = []
    for ri, recal in enumerate(RECALIBRATIONS[case]):
        for pi, perm in enumerate(PERMUTATIONS):
            targets = permute(TYPE_II_TUPLE, perm)
            rows = [_lin_row(lin, c, t) for lin, (c, t) in zip(recal, targets)] + [QUAD_SUM_ROW]
            space = solve_affine(rows, NUM_UNKNOWNS)
            if space is not None:
                out.append(_Base(Branch("II", case, f"recalibration {ri + 1}, permutation {pi + 1}", recal, targets), space))
    return tuple(out)


def _fixed_f(space: AffineSpace) -> int | None:
    u = space.point[U]
    if space.dim or u <= 0 or (1 / u).denominator != 1:
        return None
    return int(1 / u)


@lru_cache(maxsize=None)
def _type3_bases(case: RangeCase) -> tuple[_Base, ...]:
    """Type III systems pin all four angles; keep only those passing the f-free rules."""
    out = []
    for ri, recal in enumerate(RECALIBRATIONS[case]):
        for row_i, row in enumerate(MYERSON_ROWS):
            for pi, perm in enumerate(PERMUTATIONS):
                targets = tuple((x, F(0)) for x in permute(row, perm))
                rows = [_lin_row(lin, c) for lin, (c, _) in zip(recal, targets)]
                rows += [QUAD_SUM_ROW, _row((0, 0, 0, 0), theta=1)]
                space = solve_affine(rows, NUM_UNKNOWNS)
                if space is None:
                    continue
                f = _fixed_f(space)
                if f is None or f % 2 or f < 8:
                    continue
                branch = Branch("III", case, f"row {row_i + 1}, recalibration {ri + 1}, permutation {pi + 1}", recal, targets)
                a = _space_to_assignment(space, branch, None)
                if a is not None and validate_angles(a):
                    out.append(_Base(branch, space))
    return tuple(out)


def _bases(case: RangeCase) -> tuple[_Base, ...]:
    return _type1_bases(case) + _type2_bases(case) + _type3_bases(case)


def type1_angle_families(pair: CandidatePair | None, case: RangeCase | None = None) -> list[AngleAssignment]:
    """Type I assignments for a pair (``None`` imposes alpha-gamma-delta instead)."""
    cases = [case] if case else CASE_ORDER
    return [a for c in cases for a in _solve(_type1_bases(c), pair)]


def type23_angle_sets(pair: CandidatePair | None, case: RangeCase) -> list[AngleAssignment]:
    """Type II and III assignments for a pair under one range case."""
    return _solve(_type2_bases(case) + _type3_bases(case), pair)


def _extra_rows(pair: CandidatePair | None) -> list[tuple]:
    if pair is None:
        return [vertex_row(AGD)]
    return [vertex_row(pair.first), vertex_row(pair.second)]


def _solve(bases: Iterable[_Base], pair: CandidatePair | None) -> list[AngleAssignment]:
    out = []
    rows = _extra_rows(pair)
    for base in bases:
        space = base.space.intersect(rows)
        if space is None:
            continue
        a = _space_to_assignment(space, base.branch, pair)
        if a is None:
            continue
        if a.f is not None and not validate_angles(a):
            continue
        out.append(a)
    return out


@lru_cache(maxsize=None)
def _all_assignments(agd: bool) -> tuple[AngleAssignment, ...]:
    """Every assignment in case order, pairs in list order."""
    out = []
    pairs: Sequence[CandidatePair | None] = [None] if agd else PAIRS
    for case in CASE_ORDER:
        bases = _bases(case)
        for pair in pairs:
            out.extend(_solve(bases, pair))
    return tuple(out)


def _grouped_at(f: int, agd: bool) -> dict[tuple, list[tuple[AngleAssignment, bool]]]:
    """Valid assignments at f keyed by angle values; mirrored duplicates join the first orientation."""
    groups: dict[tuple, list[tuple[AngleAssignment, bool]]] = {}
    for a in _all_assignments(agd):
        if a.f is not None and a.f != f:
            continue
        if not validate_angles(a, f):
            continue
        key = a.at(f)
        mirror = (key[1], key[0], key[3], key[2])
        if key in groups:
            groups[key].append((a, False))
        elif not agd and mirror in groups:
            groups[mirror].append((a, True))
        else:
            groups[key] = [(a, False)]
    return groups


def assignments_at(f: int, agd: bool = False) -> list[AngleAssignment]:
    """Valid assignments at f, one per angle set (up to the mirror symmetry without alpha-gamma-delta)."""
    return [group[0][0].specialize(f) for group in _grouped_at(f, agd).values()]


# ---------------------------------------------------------------------------
# Self-check


@dataclass(frozen=True)
class SelfCheckReport:
    max_residual: float
    rows_checked: int
    type2_checked: int
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def myerson_residual(xs: Sequence[Fraction | float]) -> float:
    s = [math.sin(float(x) * math.pi) for x in xs]
    return abs(s[0] * s[1] - s[2] * s[3])


def myerson_self_check(tol: float = 1e-12, theta_steps: int = 120) -> SelfCheckReport:
    """Check every sporadic row under all symmetries and the type II identity on a grid."""
    worst = 0.0
    failures = []
    count = 0
    for i, row in enumerate(MYERSON_ROWS):
        for perm in PERMUTATIONS:
            r = myerson_residual(permute(row, perm))
            worst = max(worst, r)
            count += 1
            if r >= tol:
                failures.append(f"row {i + 1} {perm}: {r:.3e}")
    t2 = 0
    for k in range(theta_steps + 1):
        theta = F(k, theta_steps)  # covers [0, pi] in steps of pi/120
        for perm in PERMUTATIONS:
            r = myerson_residual(permute(type2_tuple(theta), perm))
            worst = max(worst, r)
            t2 += 1
            if r >= tol:
                failures.append(f"type II theta={theta}pi {perm}: {r:.3e}")
    return SelfCheckReport(worst, count, t2, tuple(failures))


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class CuratedFact:
    """An elimination or reduction argued by hand about angle arrangements, recorded as data."""

    f: int
    vertices: frozenset[VertexCombo]
    reduced: frozenset[VertexCombo] | None
    tiling: str | None
    note: str


def _fs(text: str) -> frozenset[VertexCombo]:
    return frozenset(V(x) for x in text.split())


CURATED_FACTS: tuple[CuratedFact, ...] = (
    CuratedFact(8, _fs("a3 bd2 d4 a2g2 ag4"), _fs("a3 bd2 d4"), None,
                "no beta^2 rules out alpha^2 gamma^2 and alpha gamma^4; gamma then never appears"),
    CuratedFact(16, _fs("ab2 ag2 abd2 b4 b2g2 g4 ad4 b3d2 bg2d2 b2d4 g2d4 bd6 d8"), _fs("ag2 abd2 b4"), "S3, S'3",
                "no alpha^2 rules out delta^3 and then ab2, bg2d2, b2g2, g4"),
    CuratedFact(20, _fs("ab2 gd3 a2gd"), None, None, "counting gamma against delta removes gamma delta^3"),
    CuratedFact(24, _fs("ab2 a4 gd3 abg2 ag4"), _fs("ab2 gd3"), None,
                "reduces to the pair, which fails counting of alpha against beta"),
    CuratedFact(36, _fs("ab2 a2d2 gd3 a3g2 ag3d g6"), _fs("ab2 a2d2 gd3 ag3d g6"), "S5",
                "alpha^3 gamma^2 cannot be arranged"),
    CuratedFact(36, _fs("ad2 ab3 g3d a2bg2 a6"), _fs("ad2 ab3 g3d a2bg2"), "S6", "alpha^6 cannot be arranged"),
    CuratedFact(60, _fs("ab2 gd3 a3b a5 bg4 a2g4"), None, None, "gamma delta^3 cannot be arranged"),
    CuratedFact(84, _fs("ab2 gd3 a3gd g5d"), None, None, "gamma delta^3 cannot be arranged"),
    CuratedFact(132, _fs("ab2 gd3 a4g2 ag6"), None, None, "gamma delta^3 cannot be arranged"),
)


def curated_fact(f: int, vertices: Iterable[VertexCombo]) -> CuratedFact | None:
    vs = frozenset(vertices)
    for fact in CURATED_FACTS:
        if fact.f == f and fact.vertices == vs:
            return fact
    return None


@dataclass(frozen=True)
class RationalResult:
    assignment: AngleAssignment
    avc: AVC
    pairs: tuple[CandidatePair, ...]
    counts: CountVector | None
    fact: CuratedFact | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def feasible(self) -> bool:
        return self.counts is not None

    @property
    def vertices(self) -> frozenset[VertexCombo]:
        return self.avc.vertices

    def summary(self) -> str:
        tag = "feasible" if self.feasible else "infeasible by counting"
        return f"f={self.avc.f} {self.assignment.describe()} AVC={format_vertices(self.vertices)} ({tag})"


RATIONAL_FILTERS = VertexFilter.PARITY | VertexFilter.DEGREE_CAP


def classify_rational(f: int) -> list[RationalResult]:
    """AVCs of valid rational assignments at f when alpha-gamma-delta is not a vertex.

    An AVC holding only its pair is dropped unless the pair alone passes
    counting; AVCs with extra vertices are kept and flagged when counting fails.
    """
    if f % 2 or f < 8:
        raise DomainError("f must be even and at least 8")
    out = []
    for group in _grouped_at(f, agd=False).values():
        a = group[0][0].specialize(f)
        pairs = []
        for b, mirrored in group:
            p = b.pair
            if mirrored:
                p = CandidatePair(p.first.mirror(), p.second.mirror(), p.unique_degree3, p.threshold)
            if p not in pairs:
                pairs.append(p)
        verts = enumerate_vertices(a.angles, f, RATIONAL_FILTERS)
        pair_set = frozenset(v for p in pairs for v in p.vertices)
        required = frozenset(pairs[0].vertices)
        counts = count_feasibility(verts, f, required)
        if verts == pair_set and counts is None:
            continue
        avc = AVC(a.angles, f, frozenset(verts), required)
        out.append(RationalResult(a, avc, tuple(pairs), counts, curated_fact(f, verts)))
    return out


def agd_vertex_filter(vertices: Iterable[VertexCombo]) -> frozenset[VertexCombo]:
    """Restrictions that follow from alpha-gamma-delta being a vertex.

    alpha^2 never shares a vertex with gamma or delta.  Without any alpha^2
    vertex, the b-hat vertices are beta^n and alpha beta^n, and a vertex with
    more delta than gamma is alpha delta^2 or alpha beta^n delta^2.  The
    balance and counting reductions are then applied until stable.
    """
    current = frozenset(v for v in vertices if not (v.m >= 2 and v.k + v.l > 0))
    while True:
        before = current
        if not any(v.m >= 2 for v in current):
            current = frozenset(
                v for v in current
                if (v.k + v.l > 0 or v.m <= 1) and (v.l <= v.k or (v.m == 1 and v.k == 0 and v.l == 2))
            )
        current = counting_reduction(balance_filter(current))
        if AGD not in current:
            return frozenset()
        if current == before:
            return current


def classify_rational_agd(f: int) -> list[RationalResult]:
    """AVCs of valid rational assignments at f with alpha-gamma-delta a vertex (so beta = 4pi/f)."""
    if f % 2 or f < 8:
        raise DomainError("f must be even and at least 8")
    out = []
    for a in assignments_at(f, agd=True):
        raw = enumerate_vertices(a.angles, f, RATIONAL_FILTERS)
        verts = agd_vertex_filter(raw)
        if not verts:
            continue
        notes = []
        if a.at(f)[2] == 1:
            notes.append("gamma = pi: the tile is an isosceles triangle")
        counts = count_feasibility(verts, f, [AGD])
        avc = AVC(a.angles, f, verts, frozenset([AGD]))
        out.append(RationalResult(a, avc, (), counts, curated_fact(f, verts), tuple(notes)))
    return out


def feasible_supports(result: RationalResult, limit: int = 12) -> list[frozenset[VertexCombo]]:
    """Subsets of the AVC containing alpha-gamma-delta that pass counting with every member present."""
    rest = sorted(result.vertices - {AGD})
    if len(rest) > limit:
        raise DomainError("AVC too large for subset search")
    out = []
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            s = frozenset((AGD, *combo))
            if count_feasibility(s, result.avc.f, s) is not None:  # type: ignore[arg-type]
                out.append(s)
    return out


def realized_rows(f: int, rows: Sequence[AvcRow] | None = None) -> dict[AvcRow, list[tuple[RationalResult, tuple[VertexCombo, ...]]]]:
    """Earth map AVC rows realised at f by some computed alpha-gamma-delta AVC.

    A row is realised when one vertex per pattern can be picked from a
    computed AVC so that the picked set passes counting with every member
    present.
    """
    rows = RATIONAL_AGD_TABLE if rows is None else rows
    results = classify_rational_agd(f)
    out: dict[AvcRow, list[tuple[RationalResult, tuple[VertexCombo, ...]]]] = {}
    for row in rows:
        if not row.applies_at(f):
            continue
        hits = []
        for res in results:
            for choice in pattern_choices(row.vertices, res.vertices, f):
                if count_feasibility(choice, f, choice) is not None:
                    hits.append((res, choice))
                    break
        if hits:
            out[row] = hits
    return out
