"""Vertex angle combinations, their enumeration and global counting checks.

A vertex is an exponent tuple ``(m, n, k, l)`` counting the angles
alpha, beta, gamma, delta that meet there.  The angles around a vertex sum to
``2*pi``; since every vertex of a tiling by quadrilaterals has degree at least
three and the b-edges pair up the gamma and delta corners, ``k + l`` is even.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, NamedTuple, Sequence

from .angles import AngleExpr, DomainError

EXPONENT_CAP = 64
NUMERIC_TOL = 1e-9
AMBIGUOUS_TOL = 1e-6

GREEK = "αβγδ"
ASCII = "abgd"
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_UNSUP = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


class VertexCombo(NamedTuple):
    m: int
    n: int
    k: int
    l: int  # noqa: E741

    @property
    def degree(self) -> int:
        return self.m + self.n + self.k + self.l

    @property
    def is_b_vertex(self) -> bool:
        return self.k + self.l > 0

    def mirror(self) -> VertexCombo:
        """Swap alpha with beta and gamma with delta."""
        return VertexCombo(self.n, self.m, self.l, self.k)

    def angle_sum(self, angles: Sequence[Fraction]) -> Fraction:
        return sum((c * a for c, a in zip(self, angles)), Fraction(0))

    def label(self, ascii_only: bool = False) -> str:
        letters = ASCII if ascii_only else GREEK
        parts = []
        for count, letter in zip(self, letters):
            if count == 1:
                parts.append(letter)
            elif count > 1:
                parts.append(letter + (str(count) if ascii_only else str(count).translate(_SUP)))
        return "".join(parts) or "1"

    def __str__(self) -> str:
        return self.label()

    @classmethod
    def parse(cls, text: str) -> VertexCombo:
        """Read ``ab2``, ``αβ²`` or ``a^2 d^2`` style notation."""
        text = text.translate(_UNSUP).replace("^", "").replace(" ", "")
        counts = [0, 0, 0, 0]
        i = 0
        while i < len(text):
            ch = text[i]
            if ch in ASCII:
                slot = ASCII.index(ch)
            elif ch in GREEK:
                slot = GREEK.index(ch)
            else:
                raise DomainError(f"unexpected character {ch!r} in vertex {text!r}")
            i += 1
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            counts[slot] += int(text[i:j]) if j > i else 1
            i = j
        return cls(*counts)


def V(text: str) -> VertexCombo:
    """Shorthand for :meth:`VertexCombo.parse`."""
    return VertexCombo.parse(text)


def format_vertices(vertices: Iterable[VertexCombo]) -> str:
    return "{" + ", ".join(v.label() for v in sort_vertices(vertices)) + "}"


def sort_vertices(vertices: Iterable[VertexCombo]) -> list[VertexCombo]:
    """Order by degree, then by exponents read from alpha to delta (largest first)."""
    return sorted(vertices, key=lambda v: (v.degree, tuple(-c for c in v)))


class VertexFilter(enum.Flag):
    NONE = 0
    PARITY = enum.auto()
    BALANCE = enum.auto()
    DEGREE_CAP = enum.auto()


DEFAULT_FILTERS = VertexFilter.PARITY


class VertexSet(frozenset):
    """A frozenset of vertices that also carries numerically ambiguous candidates."""

    ambiguous: frozenset

    def __new__(cls, items: Iterable[VertexCombo] = (), ambiguous: Iterable[VertexCombo] = ()):
        obj = super().__new__(cls, items)
        obj.ambiguous = frozenset(ambiguous)
        return obj


def _exact_angles(angles: Sequence[AngleExpr | Fraction | float], f: int | None) -> list[Fraction] | None:
    out: list[Fraction] = []
    for a in angles:
        if isinstance(a, AngleExpr):
            if not a.is_exact:
                return None
            if a.c1 and f is None:
                raise DomainError("affine angle families need f")
            out.append(a.pi_units(f if f is not None else 1))
        elif isinstance(a, (Fraction, int)):
            out.append(Fraction(a))
        else:
            return None
    return out


def _radians(angles: Sequence[AngleExpr | Fraction | float], f: int | None) -> list[float]:
    out = []
    for a in angles:
        if isinstance(a, AngleExpr):
            out.append(a.radians(f))
        elif isinstance(a, (Fraction, int)):
            out.append(float(a) * math.pi)
        else:
            out.append(float(a))
    return out


def balance_filter(vertices: Iterable[VertexCombo]) -> frozenset[VertexCombo]:
    """If gamma^2 or delta^2 never occur, the remaining b-vertices have k == l == 1.

    Applied until nothing changes, since dropping vertices can remove the
    last witness of the other square.
    """
    current = frozenset(vertices)
    while True:
        has_k2 = any(v.k >= 2 for v in current)
        has_l2 = any(v.l >= 2 for v in current)
        if has_k2 and has_l2:
            return current
        kept = frozenset(v for v in current if v.k < 2 and v.l < 2)
        if kept == current:
            return current
        current = kept


def enumerate_vertices(
    angles: Sequence[AngleExpr | Fraction | float],
    f: int | None = None,
    filters: VertexFilter = DEFAULT_FILTERS,
    cap: int = EXPONENT_CAP,
) -> VertexSet:
    """All ``(m, n, k, l)`` with ``m*alpha + n*beta + k*gamma + l*delta = 2*pi``.

    ``angles`` are :class:`AngleExpr`, exact fractions of pi, or floats in
    radians.  Degree is at least three.  ``DEGREE_CAP`` also bounds the degree
    by ``f - 3``, which follows from ``f = 6 + sum (h - 3) v_h``.
    """
    if len(angles) != 4:
        raise DomainError("need four angles")
    if filters & VertexFilter.DEGREE_CAP and f is None:
        raise DomainError("the degree cap needs f")
    exact = _exact_angles(angles, f)
    if exact is not None:
        if any(not 0 < a < 2 for a in exact):
            raise DomainError(f"angles must lie in (0, 2pi), got {[str(a) for a in exact]}")
        found, ambiguous = _enumerate_exact(exact, cap), set()
    else:
        rad = _radians(angles, f)
        if any(not 0 < a < 2 * math.pi for a in rad):
            raise DomainError("angles must lie in (0, 2pi)")
        found, ambiguous = _enumerate_numeric(rad, cap)

    def keep(v: VertexCombo) -> bool:
        if v.degree < 3:
            return False
        if filters & VertexFilter.PARITY and (v.k + v.l) % 2:
            return False
        if filters & VertexFilter.DEGREE_CAP and v.degree > f - 3:  # type: ignore[operator]
            return False
        return True

    kept = {v for v in found if keep(v)}
    if filters & VertexFilter.BALANCE:
        kept = set(balance_filter(kept))
    return VertexSet(kept, (v for v in ambiguous if keep(v)))


def _enumerate_exact(angles: list[Fraction], cap: int) -> set[VertexCombo]:
    denom = reduce(math.lcm, (a.denominator for a in angles), 1)
    w = [int(a * denom) for a in angles]
    target = 2 * denom
    bounds = [min(cap, target // wi) for wi in w]
    out = set()
    for m in range(bounds[0] + 1):
        r0 = target - m * w[0]
        for n in range(min(bounds[1], r0 // w[1]) + 1):
            r1 = r0 - n * w[1]
            for k in range(min(bounds[2], r1 // w[2]) + 1):
                r2 = r1 - k * w[2]
                if r2 % w[3] == 0 and r2 // w[3] <= bounds[3]:
                    out.add(VertexCombo(m, n, k, r2 // w[3]))
    return out


def _enumerate_numeric(angles: list[float], cap: int) -> tuple[set[VertexCombo], set[VertexCombo]]:
    full = 2 * math.pi
    bounds = [min(cap, int((full + AMBIGUOUS_TOL) // a)) for a in angles]
    found, ambiguous = set(), set()
    for m in range(bounds[0] + 1):
        r0 = full - m * angles[0]
        for n in range(bounds[1] + 1):
            r1 = r0 - n * angles[1]
            if r1 < -AMBIGUOUS_TOL:
                break
            for k in range(bounds[2] + 1):
                r2 = r1 - k * angles[2]
                if r2 < -AMBIGUOUS_TOL:
                    break
                l = round(r2 / angles[3])  # noqa: E741
                if l < 0 or l > bounds[3]:
                    continue
                err = abs(r2 - l * angles[3])
                if err <= NUMERIC_TOL:
                    found.add(VertexCombo(m, n, k, l))
                elif err <= AMBIGUOUS_TOL:
                    ambiguous.add(VertexCombo(m, n, k, l))
    return found, ambiguous


@dataclass(frozen=True)
class AVC:
    """An anglewise vertex combination: admissible vertices for an angle assignment."""

    angles: tuple[AngleExpr, AngleExpr, AngleExpr, AngleExpr]
    f: int | None
    vertices: frozenset[VertexCombo]
    required: frozenset[VertexCombo] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.required <= self.vertices:
            raise DomainError("required vertices must belong to the AVC")

    def mirror(self) -> AVC:
        a, b, c, d = self.angles
        return AVC(
            (b, a, d, c),
            self.f,
            frozenset(v.mirror() for v in self.vertices),
            frozenset(v.mirror() for v in self.required),
        )

    def __str__(self) -> str:
        return format_vertices(self.vertices)


@dataclass(frozen=True)
class CountVector:
    """How many times each vertex of an AVC occurs in a tiling."""

    counts: Mapping[VertexCombo, int]

    def total(self) -> int:
        return sum(self.counts.values())

    def angle_totals(self) -> tuple[int, int, int, int]:
        totals = [0, 0, 0, 0]
        for v, x in self.counts.items():
            for i in range(4):
                totals[i] += x * v[i]
        return tuple(totals)  # type: ignore[return-value]

    def nonzero(self) -> dict[VertexCombo, int]:
        return {v: x for v, x in self.counts.items() if x}


def count_feasibility(
    vertices: Iterable[VertexCombo],
    f: int,
    required: Iterable[VertexCombo] = (),
) -> CountVector | None:
    """Find multiplicities with each angle used ``f`` times and ``f + 2`` vertices.

    Returns ``None`` when no nonnegative integer solution exists.  Required
    vertices must occur at least once.  Branch and prune over the vertices,
    with the last vertex solved directly.
    """
    verts = sort_vertices(set(vertices))
    req = set(required)
    if not req <= set(verts):
        raise DomainError("required vertices must be among the vertices")
    if not verts:
        raise DomainError("empty vertex list")
    for i in range(4):
        if all(v[i] == 0 for v in verts):
            raise DomainError(f"angle {GREEK[i]} appears at no vertex")
    # Vertices with the rarest angles first keeps the search narrow.
    verts.sort(key=lambda v: (-max(v), -v.degree))
    nv = len(verts)
    # suffix_has[i][j]: some vertex at index >= i uses angle j
    suffix_has = [[False] * 4 for _ in range(nv + 1)]
    suffix_deg = [(math.inf, 0)] * (nv + 1)
    for i in range(nv - 1, -1, -1):
        suffix_has[i] = [suffix_has[i + 1][j] or verts[i][j] > 0 for j in range(4)]
        lo, hi = suffix_deg[i + 1]
        suffix_deg[i] = (min(lo, verts[i].degree), max(hi, verts[i].degree))
    counts = [0] * nv

    def search(i: int, rem: list[int], rem_v: int) -> bool:
        if rem_v < 0 or any(r < 0 for r in rem):
            return False
        if any(rem[j] and not suffix_has[i][j] for j in range(4)):
            return False
        total = sum(rem)
        if rem_v == 0:
            if total:
                return False
            return all(verts[t] not in req for t in range(i, nv))
        lo, hi = suffix_deg[i]
        if i == nv or total < lo * rem_v or total > hi * rem_v:
            return False
        v = verts[i]
        if i == nv - 1:
            if any(rem[j] != rem_v * v[j] for j in range(4)):
                return False
            counts[i] = rem_v
            return True
        start = 1 if v in req else 0
        limit = min((rem[j] // v[j] for j in range(4) if v[j]), default=0)
        limit = min(limit, rem_v)
        for x in range(limit, start - 1, -1):
            counts[i] = x
            if search(i + 1, [rem[j] - x * v[j] for j in range(4)], rem_v - x):
                return True
        counts[i] = 0
        return False

    if search(0, [f, f, f, f], f + 2):
        return CountVector(dict(zip(verts, counts)))
    return None


@dataclass(frozen=True)
class DegreeHistogram:
    """Number of vertices of each degree (degree >= 3)."""

    counts: Mapping[int, int]

    def vertex_count(self) -> int:
        return sum(self.counts.values())


def check_degree_counts(hist: DegreeHistogram | Mapping[int, int]) -> int | None:
    """Return f when ``f = 6 + sum (h-3) v_h`` and ``v_3 = 8 + sum (h-4) v_h`` hold.

    Returns ``None`` (reject) when the second identity fails, f is odd, or a
    degree below three is present.
    """
    counts = hist.counts if isinstance(hist, DegreeHistogram) else hist
    if any(h < 3 and x for h, x in counts.items()) or any(x < 0 for x in counts.values()):
        return None
    f = 6 + sum((h - 3) * x for h, x in counts.items() if h >= 4)
    v3 = 8 + sum((h - 4) * x for h, x in counts.items() if h >= 4)
    if counts.get(3, 0) != v3 or f % 2:
        return None
    return f


def counting_reduction(vertices: Iterable[VertexCombo]) -> frozenset[VertexCombo]:
    """Drop vertices ruled out by comparing per-angle counts.

    Every angle occurs f times in total.  If at every vertex angle i occurs
    no more often than angle j, any vertex where it occurs strictly less often
    cannot appear.  Repeated over all ordered pairs until stable.
    """
    current = frozenset(vertices)
    changed = True
    while changed:
        changed = False
        for i in range(4):
            for j in range(4):
                if i == j or not current:
                    continue
                if all(v[i] <= v[j] for v in current):
                    kept = frozenset(v for v in current if v[i] == v[j])
                    if kept != current:
                        current, changed = kept, True
    return current
