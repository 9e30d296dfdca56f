"""Checks that a map is an edge-to-edge tiling of the sphere with the given angles."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..catalog import AvcRow
from ..patterns import VertexPattern
from ..vertices import VertexCombo, check_degree_counts
from .model import AngleSet, StructureError, TilingMap, angle_values

ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class Failure:
    rule: str
    location: str
    message: str

    def __str__(self) -> str:
        return f"[{self.rule}] {self.location}: {self.message}"


@dataclass(frozen=True)
class VerificationReport:
    rules: dict[str, bool]
    vertex_multiset: Counter[VertexCombo]
    degree_histogram: dict[int, int]
    failures: tuple[Failure, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(self.rules.values())

    def summary(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'}"]
        lines += [f"  {rule}: {'ok' if ok else 'FAIL'}" for rule, ok in self.rules.items()]
        ms = ", ".join(f"{n} {v.label()}" for v, n in sorted(self.vertex_multiset.items(), key=lambda kv: (-kv[1], kv[0])))
        lines.append(f"  vertices: {ms}")
        lines.append("  degrees: " + ", ".join(f"{d}:{n}" for d, n in sorted(self.degree_histogram.items())))
        lines += [f"  {x}" for x in self.failures]
        return "\n".join(lines)


ExpectedAvc = AvcRow | Iterable[VertexCombo | VertexPattern]


def _expected_patterns(expected: ExpectedAvc, f: int) -> tuple[VertexPattern, ...]:
    if isinstance(expected, AvcRow):
        return tuple(p.instantiate(f) for p in expected.vertices)
    pats = tuple(p if isinstance(p, VertexPattern) else VertexPattern.of(p) for p in expected)
    return tuple(p.instantiate(f) for p in pats)


def verify_tiling(
    m: TilingMap,
    angles: AngleSet | None = None,
    expected_avc: ExpectedAvc | None = None,
    require_all: bool = True,
) -> VerificationReport:
    """Run every check and collect failures rather than stopping at the first.

    ``expected_avc`` may be a table row or a collection of vertices or
    patterns.  Each observed vertex must match one of them and, with
    ``require_all``, every pattern must be matched by some vertex.
    """
    failures: list[Failure] = []
    rules: dict[str, bool] = {}

    def fail(rule: str, loc: str, msg: str) -> None:
        failures.append(Failure(rule, loc, msg))
        rules[rule] = False

    for t in m.tiles:
        if len(set(t.corners)) != 4:
            raise StructureError("tile repeats a vertex", f"tile {t.id}")

    # Edge matching: each directed side once, its reverse once, same type.
    rules["edges"] = True
    sides = m.directed_sides()
    for (u, v), uses in sorted(sides.items()):
        if len(uses) > 1:
            fail("edges", f"edge {u}->{v}", f"traversed in the same direction by tiles {[t for t, _ in uses]}")
        back = sides.get((v, u))
        if back is None:
            fail("edges", f"edge {u}-{v}", f"tile {uses[0][0]} has no neighbour across this edge")
        elif u < v and {k for _, k in uses} != {k for _, k in back}:
            fail("edges", f"edge {u}-{v}", f"type {uses[0][1]} (tile {uses[0][0]}) meets type {back[0][1]} (tile {back[0][0]})")

    # Each vertex link is a single cycle.
    rules["vertex links"] = True
    nxt: dict[int, dict[int, int]] = {}
    for t in m.tiles:
        cs = t.ccw_sides()
        for i in range(4):
            prev_v = cs[i - 1][0]
            v = cs[i][0]
            nxt_v = cs[i][1]
            nxt.setdefault(v, {})[nxt_v] = prev_v
    combos = m.vertex_combos()
    for v, links in nxt.items():
        start = next(iter(links))
        cur, steps = start, 0
        while True:
            cur = links.get(cur)  # type: ignore[assignment]
            steps += 1
            if cur is None or cur == start or steps > len(links):
                break
        if cur != start or steps != len(links):
            fail("vertex links", f"vertex {v}", "corners do not close up into one cycle")

    combos_values = list(combos.values())
    degrees = Counter(c.degree for c in combos_values)
    nv, ne = len(combos), len(sides) // 2
    rules["euler"] = True
    if nv - ne + m.f != 2 or 2 * ne != 4 * m.f or nv != m.f + 2:
        fail("euler", "map", f"V={nv}, E={ne}, F={m.f}")
    rules["degrees"] = True
    low = [v for v, c in combos.items() if c.degree < 3]
    if low:
        fail("degrees", f"vertex {low[0]}", "degree below 3")
    elif check_degree_counts(dict(degrees)) != m.f:
        fail("degrees", "map", f"degree histogram {dict(sorted(degrees.items()))} inconsistent with f={m.f}")

    rules["parity"] = True
    for v, c in combos.items():
        if (c.k + c.l) % 2:
            fail("parity", f"vertex {v}", f"{c.label()} has an odd number of gamma and delta")

    angles = angles if angles is not None else m.angles
    if angles is not None:
        rules["angle sums"] = True
        exact, rad = angle_values(angles, m.f)
        if exact is not None and sum(exact) != 2 + Fraction(4, m.f):
            fail("angle sums", "tile", f"angles sum to {sum(exact)}pi, not (2 + 4/f)pi")
        for v, c in combos.items():
            if exact is not None:
                ok = c.angle_sum(exact) == 2
            else:
                ok = abs(sum(n * a for n, a in zip(c, rad)) - 2 * math.pi) <= ANGLE_TOL
            if not ok:
                fail("angle sums", f"vertex {v}", f"{c.label()} does not sum to 2pi")

    if expected_avc is not None:
        rules["avc"] = True
        pats = _expected_patterns(expected_avc, m.f)
        seen = set(combos_values)
        for v, c in combos.items():
            if not any(p.matches(c, m.f) for p in pats):
                fail("avc", f"vertex {v}", f"{c.label()} not in the expected AVC")
        if require_all:
            for p in pats:
                if not any(p.matches(c, m.f) for c in seen):
                    fail("avc", "map", f"{p.label()} never appears")

    return VerificationReport(rules, Counter(combos_values), dict(sorted(degrees.items())), tuple(failures))

