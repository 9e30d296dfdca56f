"""Spherical realisation of a³b and a²bc quadrilaterals.

Angles and edges are in radians.  A tile closes when the walk

    Y(c) Z(π-β) Y(a) Z(π-α) Y(a) Z(π-δ) Y(b) Z(π-γ)

returns to the identity; for a³b the edge ``c`` equals ``a``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from .angles import DomainError

TOL = 1e-9
IDENTITY_TOL = 1e-12
TWO_PI = 2 * math.pi


class GeometryError(ValueError):
    """A tile with the requested data does not exist."""


class NotRealizable(GeometryError):
    pass


class IdentityViolated(GeometryError):
    pass


class RhombusDegenerate(GeometryError):
    pass


class TileKind(enum.Enum):
    A3B = "a3b"
    A2BC = "a2bc"


class Shape(enum.Enum):
    CONVEX = "convex"
    ALPHA_REFLEX = "alpha-reflex"
    BETA_REFLEX = "beta-reflex"
    GAMMA_REFLEX = "gamma-reflex"
    DELTA_REFLEX = "delta-reflex"


class Degeneracy(enum.Enum):
    NONE = "none"
    TRIANGLE_ALPHA_PI = "triangle-alpha-pi"
    TRIANGLE_GAMMA_PI = "triangle-gamma-pi"
    RHOMBUS = "rhombus"
    KITE = "kite"


@dataclass(frozen=True)
class QuadGeometry:
    tile_kind: TileKind
    alpha: float
    beta: float
    gamma: float
    delta: float
    a: float
    b: float
    c: float | None = None
    shape: Shape = Shape.CONVEX
    degeneracy: Degeneracy = Degeneracy.NONE
    coolsaet: float | None = None
    closure: float = math.nan
    theta_oriented: float | None = None

    @property
    def angles(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @property
    def edge_c(self) -> float:
        return self.a if self.c is None else self.c


def Y(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def Z(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def closure_factors(alpha: float, beta: float, gamma: float, delta: float, a: float, b: float, c: float) -> list[np.ndarray]:
    pi = math.pi
    return [Y(c), Z(pi - beta), Y(a), Z(pi - alpha), Y(a), Z(pi - delta), Y(b), Z(pi - gamma)]


def closure_product(alpha: float, beta: float, gamma: float, delta: float, a: float, b: float, c: float, shift: int = 0) -> np.ndarray:
    """The walk around the tile, optionally started ``shift`` factors later."""
    fs = closure_factors(alpha, beta, gamma, delta, a, b, c)
    fs = fs[shift:] + fs[:shift]
    out = np.eye(3)
    for m in fs:
        out = out @ m
    return out


def closure_residual(g: QuadGeometry, shift: int = 0) -> float:
    """Largest entry of ``P - I`` for the walk around ``g``."""
    p = closure_product(g.alpha, g.beta, g.gamma, g.delta, g.a, g.b, g.edge_c, shift)
    return float(np.max(np.abs(p - np.eye(3))))


def coolsaet_residual(alpha: float, beta: float, gamma: float, delta: float) -> float:
    return math.sin(alpha / 2) * math.sin(delta - beta / 2) - math.sin(beta / 2) * math.sin(gamma - alpha / 2)


def cos_a_expressions(alpha: float, beta: float, gamma: float, delta: float) -> tuple[float | None, float | None]:
    """The two closed forms for cos a of an a³b tile; ``None`` where a denominator vanishes."""
    d1 = (1 - math.cos(beta)) * math.sin(gamma)
    d2 = (1 - math.cos(alpha)) * math.sin(delta)
    e1 = (math.sin(beta) * math.cos(gamma) + math.sin(delta)) / d1 if abs(d1) > TOL else None
    e2 = (math.sin(alpha) * math.cos(delta) + math.sin(gamma)) / d2 if abs(d2) > TOL else None
    return e1, e2


@dataclass(frozen=True)
class A2bcTerms:
    """Existence residual and the right-hand sides for sin γ · (cos b, sin b, cos c, sin c)."""

    existence: float
    cos_b: float
    sin_b: float
    cos_c: float
    sin_c: float


def a2bc_terms(alpha: float, beta: float, gamma: float, delta: float, a: float) -> A2bcTerms:
    ca, sa = math.cos(a), math.sin(a)
    cal, sal = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)
    cd, sd = math.cos(delta), math.sin(delta)
    s = (cal - 1) * sb * sd * ca**2 + sal * math.sin(beta + delta) * ca + sb * sd - cal * cb * cd + math.cos(gamma)
    p_b = (1 - cal) * sb * cd * ca**2 - sal * math.cos(beta + delta) * ca - sb * cd - cal * cb * sd
    q_b = ((1 - cal) * sb * ca - sal * cb) * sa
    p_c = (1 - cal) * cb * sd * ca**2 - sal * math.cos(beta + delta) * ca - cb * sd - cal * sb * cd
    q_c = ((1 - cal) * sd * ca - sal * cd) * sa
    return A2bcTerms(s, p_b, q_b, p_c, q_c)


def _angle_from(cos_part: float, sin_part: float) -> float:
    """The angle in (0, 2π] with the given (scaled) cosine and sine."""
    t = math.atan2(sin_part, cos_part) % TWO_PI
    return TWO_PI if t == 0 else t


def _shape(angles: tuple[float, float, float, float], tol: float) -> Shape:
    reflex = [i for i, x in enumerate(angles) if x > math.pi + tol]
    if len(reflex) > 1:
        raise NotRealizable("more than one angle exceeds pi")
    if not reflex:
        return Shape.CONVEX
    return (Shape.ALPHA_REFLEX, Shape.BETA_REFLEX, Shape.GAMMA_REFLEX, Shape.DELTA_REFLEX)[reflex[0]]


def _check_angles(angles: tuple[float, float, float, float]) -> None:
    for x in angles:
        if not math.isfinite(x) or not 0 < x < TWO_PI:
            raise DomainError(f"angle {x} outside (0, 2pi)")


def _b_from_walk(alpha: float, beta: float, gamma: float, delta: float, a: float, c: float) -> float:
    """Read b off the closure equation once the other edges are known."""
    pi = math.pi
    m = Y(c) @ Z(pi - beta) @ Y(a) @ Z(pi - alpha) @ Y(a) @ Z(pi - delta)
    w = m.T @ Z(pi - gamma).T
    return _angle_from(w[0, 0], w[0, 2])


def realize_a3b(alpha: float, beta: float, gamma: float, delta: float, tol: float = TOL) -> QuadGeometry:
    """Edges of the almost equilateral tile with the given angles.

    cos a comes from the closed forms (cross-checked when both apply), b
    from its sine and cosine, or from the closure walk when sin γ = 0.
    """
    angles = (alpha, beta, gamma, delta)
    _check_angles(angles)
    res = coolsaet_residual(*angles)
    if abs(res) >= tol:
        raise IdentityViolated(f"Coolsaet residual {res:.3e}")
    e1, e2 = cos_a_expressions(*angles)
    if e1 is None and e2 is None:
        raise NotRealizable("both expressions for cos a are singular")
    if e1 is not None and e2 is not None and abs(e1 - e2) > max(tol, 1e-8 * max(1.0, abs(e1))):
        raise IdentityViolated(f"cos a expressions disagree: {e1} vs {e2}")
    cos_a = e1 if e1 is not None else e2
    if abs(cos_a) >= 1:  # type: ignore[arg-type]
        raise NotRealizable(f"|cos a| = {abs(cos_a):.6f} >= 1")  # type: ignore[arg-type]
    a = math.acos(cos_a)  # type: ignore[arg-type]
    sg = math.sin(gamma)
    if abs(sg) > tol:
        t = a2bc_terms(alpha, beta, gamma, delta, a)
        b = _angle_from(t.cos_b / sg, t.sin_b / sg)
    else:
        b = _b_from_walk(alpha, beta, gamma, delta, a, a)
    degeneracy = Degeneracy.NONE
    if abs(alpha - math.pi) < tol:
        degeneracy = Degeneracy.TRIANGLE_ALPHA_PI
    elif abs(gamma - math.pi) < tol:
        degeneracy = Degeneracy.TRIANGLE_GAMMA_PI
    elif abs(b - a) < tol:
        raise RhombusDegenerate("b equals a")
    g = QuadGeometry(TileKind.A3B, alpha, beta, gamma, delta, a, b, None, _shape(angles, tol), degeneracy, res)
    return replace(g, closure=closure_residual(g))


def realize_a2bc(alpha: float, beta: float, gamma: float, delta: float, a: float, tol: float = TOL) -> QuadGeometry:
    """Edges b and c of the a²bc tile with the given angles and edge a."""
    angles = (alpha, beta, gamma, delta)
    _check_angles(angles)
    if not 0 < a < math.pi:
        raise DomainError("a must lie in (0, pi)")
    sg = math.sin(gamma)
    if abs(sg) < tol:
        raise DomainError("sin gamma vanishes")
    t = a2bc_terms(alpha, beta, gamma, delta, a)
    if abs(t.existence) >= tol:
        raise NotRealizable(f"existence residual {t.existence:.3e}")
    b = _angle_from(t.cos_b / sg, t.sin_b / sg)
    c = _angle_from(t.cos_c / sg, t.sin_c / sg)
    degeneracy = Degeneracy.KITE if abs(b - c) < tol else Degeneracy.NONE
    g = QuadGeometry(TileKind.A2BC, alpha, beta, gamma, delta, a, b, c, _shape(angles, tol), degeneracy)
    return replace(g, closure=closure_residual(g))


def edge_reductions(g: QuadGeometry, tol: float = TOL) -> list[str]:
    """Which of c = a, b = a, c = b hold for an a²bc tile."""
    out = []
    c = g.edge_c
    if abs(c - g.a) < tol:
        out.append("c=a")
    if abs(g.b - g.a) < tol:
        out.append("b=a")
    if abs(c - g.b) < tol:
        out.append("c=b")
    return out


# ---------------------------------------------------------------------------
# Simplicity


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool | None  # None: no sufficient condition applied
    trace: tuple[str, ...]


def _b_below_pi(g: QuadGeometry) -> str | None:
    al, be, ga, de = g.angles
    pi = math.pi
    if all(0 < x < pi for x in g.angles) and 0 < g.a < pi:
        if be > de:
            return "all angles < pi and beta > delta, so b < pi"
        if al > ga:
            return "all angles < pi and alpha > gamma, so b < pi"
    if 0 < ga < pi and 0 < de < pi:
        if math.cos(be - de) + math.cos(ga) > 0:
            return "cos(beta - delta) + cos(gamma) > 0, so b < pi"
        if be <= pi and (be + pi > ga + de or de + pi > be + ga):
            return "beta <= pi with beta + pi > gamma + delta or delta + pi > beta + gamma, so b < pi"
    if 0 < ga < pi and 0 < de < pi:
        if math.cos(al - ga) + math.cos(de) > 0:
            return "cos(alpha - gamma) + cos(delta) > 0, so b < pi"
        if al <= pi and (al + pi > de + ga or ga + pi > al + de):
            return "alpha <= pi with alpha + pi > delta + gamma or gamma + pi > alpha + delta, so b < pi"
    return None


def simplicity_check(g: QuadGeometry) -> SimplicityVerdict:
    """Sufficient test: every edge and at least three angles below pi."""
    trace = []
    if g.tile_kind is TileKind.A3B:
        reason = _b_below_pi(g)
        if reason is None:
            return SimplicityVerdict(None, ("no rule shows b < pi",))
        trace.append(reason)
        edges_ok = 0 < g.a < math.pi
    else:
        edges_ok = all(0 < e < math.pi for e in (g.a, g.b, g.edge_c))
        trace.append("computed a, b, c < pi" if edges_ok else "some computed edge >= pi")
        if not edges_ok:
            return SimplicityVerdict(None, tuple(trace))
    small = sum(1 for x in g.angles if x < math.pi)
    if edges_ok and small >= 3:
        trace.append(f"{small} angles < pi and all edges < pi: simple")
        return SimplicityVerdict(True, tuple(trace))
    trace.append("fewer than three angles < pi")
    return SimplicityVerdict(None, tuple(trace))


# ---------------------------------------------------------------------------
# Earth map tiles (alpha + gamma + delta = 2pi)


@dataclass(frozen=True)
class EarthMapEdges:
    a: float
    b: float
    shape: Shape
    degeneracy: Degeneracy
    theta_oriented: float


def earth_map_edges(alpha: float, beta: float, tol: float = TOL) -> EarthMapEdges:
    """Edges of the a³b tile with area beta, from alpha alone (beta = 4π/f in a tiling)."""
    pi = math.pi
    if not pi / 2 < alpha < 3 * pi / 2:
        raise DomainError("alpha must lie in (pi/2, 3pi/2)")
    if not 0 < beta < pi:
        raise DomainError("beta must lie in (0, pi)")
    ca = math.cos(alpha)
    cos_a = ca / (ca - 1)
    cos_b = ((2 * ca - 1) * math.cos(alpha + beta) - ca**2) / (1 - ca) ** 2
    theta = pi - alpha
    if theta < -tol:
        shape = Shape.ALPHA_REFLEX
    elif theta > beta + tol:
        shape = Shape.GAMMA_REFLEX
    else:
        shape = Shape.CONVEX
    if abs(alpha - pi) < tol:
        deg = Degeneracy.TRIANGLE_ALPHA_PI
    elif abs(alpha + beta - pi) < tol:
        deg = Degeneracy.TRIANGLE_GAMMA_PI
    elif abs(theta - beta / 2) < tol:
        deg = Degeneracy.RHOMBUS
    else:
        deg = Degeneracy.NONE
    return EarthMapEdges(math.acos(cos_a), math.acos(max(-1.0, min(1.0, cos_b))), shape, deg, theta)


def complete_a3b(alpha: float, beta: float, a: float) -> tuple[float, float, float]:
    """Given alpha, beta and a, walk three a-edges and read (gamma, delta, b) off the rest.

    The remaining rotation ``Z(π-δ) Y(b) Z(π-γ)`` is split as Z-Y-Z Euler
    angles with b in (0, π).
    """
    pi = math.pi
    m = Y(a) @ Z(pi - beta) @ Y(a) @ Z(pi - alpha) @ Y(a)
    r = m.T
    b = math.acos(max(-1.0, min(1.0, r[2, 2])))
    u = math.atan2(r[1, 2], r[0, 2])
    w = math.atan2(r[2, 1], -r[2, 0])
    delta = (pi - u) % TWO_PI
    gamma = (pi - w) % TWO_PI
    return gamma, delta, b


# ---------------------------------------------------------------------------
# Root finding for a free angle


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    tag: str = ""


@dataclass(frozen=True)
class Root:
    x: float
    residual: float
    bracket: RootBracket = field(compare=False)


def solve_free_angle(
    residual: Callable[[float], float],
    lo: float,
    hi: float,
    samples: int = 10_000,
    xtol: float = 1e-13,
    tag: str = "",
) -> list[Root]:
    """All roots of ``residual`` on the open interval (lo, hi) found by a uniform scan and bisection."""
    xs = np.linspace(lo, hi, samples + 1)[1:-1]
    vals = [residual(float(x)) for x in xs]
    roots = []
    for x0, x1, v0, v1 in zip(xs, xs[1:], vals, vals[1:]):
        if v0 == 0:
            roots.append(Root(float(x0), 0.0, RootBracket(float(x0), float(x0), tag)))
            continue
        if v0 * v1 < 0:
            x = bisect(residual, float(x0), float(x1), xtol=xtol)
            roots.append(Root(x, residual(x), RootBracket(float(x0), float(x1), tag)))
    return roots


def alpha_delta_squared_residual(f: int) -> Callable[[float], float]:
    """Coolsaet identity for α = 2π - 2δ, β = 8π/f, γ = δ - 4π/f, as a function of δ."""
    t = 4 * math.pi / f

    def res(delta: float) -> float:
        return math.sin(delta) * math.sin(delta - t) + math.sin(t) * math.sin(2 * delta - t)

    return res


def alpha_delta_squared_roots(f: int) -> list[Root]:
    """δ in ((1 - 4/f)π, π) solving the identity for the α δ², α β γ², β^(f/4) tiles."""
    return solve_free_angle(alpha_delta_squared_residual(f), (1 - 4 / f) * math.pi, math.pi, tag=f"f={f}")
