"""Command line front end.

Subcommands: classify, realize, tables, generate, verify, render.  Exit
status is 0 on success, 1 when a tiling or tile fails verification and 2 on
a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from .angles import AngleExpr, DomainError, parse_angle
from .catalog import AvcRow, RATIONAL_TABLE
from .diophantine import classify_nonrational
from .geometry import (
    GeometryError,
    QuadGeometry,
    TOL,
    TileKind,
    closure_residual,
    complete_a3b,
    earth_map_edges,
    realize_a2bc,
    realize_a3b,
    simplicity_check,
)
from .geometry_tables import EARTH_MAP_TABLE, GEOMETRY_TABLE
from .rational import RationalResult, classify_rational, classify_rational_agd
from .vertices import V, VertexCombo, sort_vertices
from .tilings import (
    FlipKind,
    FlipPreconditionError,
    FlipSpec,
    ParseError,
    StructureError,
    apply_flip,
    classify_minimal,
    exact_angles,
    generate_earth_map,
    generate_rearrangement,
    load_fixture,
    load_tiling,
    render_svg,
    save_tiling,
    verify_tiling,
)


TOL_ENV = "QUADTILE_TOL"
MAX_TOL = 1e-3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# formatting helpers


def fmt(x: float) -> str:
    """Shortest round-trip decimal."""
    return repr(float(x))


def exact_pi(x: float, max_den: int = 360) -> str:
    """``p/q`` when ``x`` (radians) is a rational multiple of pi with a small denominator, else empty."""
    q = Fraction(x / math.pi).limit_denominator(max_den)
    return str(q) if abs(float(q) * math.pi - x) < 1e-12 else ""


def labels(vertices) -> list[str]:
    return [v.label() for v in sort_vertices(vertices)]


def row_label(row: AvcRow) -> list[str]:
    return [p.label() for p in row.vertices]


def _tolerance(value: str | None) -> float:
    raw = value if value is not None else os.environ.get(TOL_ENV)
    if raw is None:
        return TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise UsageError(f"tolerance {raw!r} is not a number") from exc
    if not 0 < tol < MAX_TOL:
        raise UsageError(f"tolerance must lie in (0, {MAX_TOL})")
    return tol


def _even_f(f: int, low: int = 6) -> int:
    if f < low or f % 2:
        raise UsageError(f"f must be even and at least {low}")
    return f


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


# ---------------------------------------------------------------------------
# realization


def geometry_record(g: QuadGeometry) -> dict[str, Any]:
    verdict = simplicity_check(g)
    edges = {"a": g.a, "b": g.b} if g.c is None else {"a": g.a, "b": g.b, "c": g.c}
    return {
        "tile_kind": g.tile_kind.value,
        "angles": {n: fmt(x) for n, x in zip(("alpha", "beta", "gamma", "delta"), g.angles)},
        "angles_pi": {n: fmt(x / math.pi) for n, x in zip(("alpha", "beta", "gamma", "delta"), g.angles)},
        "edges": {k: fmt(v) for k, v in edges.items()},
        "edges_pi": {k: fmt(v / math.pi) for k, v in edges.items()},
        "shape": g.shape.value,
        "degeneracy": g.degeneracy.value,
        "closure_residual": fmt(g.closure),
        "simple": verdict.simple,
        "simplicity_trace": list(verdict.trace),
    }


def realization_verdict(angles_pi: Sequence[Fraction | float], tol: float) -> dict[str, Any]:
    rad = [float(x) * math.pi for x in angles_pi]
    try:
        g = realize_a3b(*rad, tol=tol)
    except (GeometryError, DomainError) as exc:
        return {"realizable": False, "reason": str(exc)}
    verdict = simplicity_check(g)
    return {
        "realizable": True,
        "a_pi": fmt(g.a / math.pi),
        "b_pi": fmt(g.b / math.pi),
        "closure_residual": fmt(g.closure),
        "simple": verdict.simple,
        "degeneracy": g.degeneracy.value,
    }


def earth_family_verdict(f: int, tol: float, alpha_pi: float = 0.75) -> dict[str, Any]:
    """Realize one member of the earth map family (beta = 4pi/f, alpha free)."""
    alpha, beta = alpha_pi * math.pi, 4 * math.pi / f
    e = earth_map_edges(alpha, beta, tol)
    gamma, delta, _ = complete_a3b(alpha, beta, e.a)
    out = realization_verdict([alpha_pi, 4 / f, gamma / math.pi, delta / math.pi], tol)
    out["sample_angles_pi"] = [fmt(alpha_pi), fmt(4 / f), fmt(gamma / math.pi), fmt(delta / math.pi)]
    return out


# ---------------------------------------------------------------------------
# classify


def _rational_record(res: RationalResult, f: int, branch: str, tol: float) -> dict[str, Any]:
    vals = res.assignment.at(f)
    tiling = ""
    for row in RATIONAL_TABLE:
        if row.f == f and row.fixed_set() == res.vertices:
            tiling = row.tiling
    rec: dict[str, Any] = {
        "branch": branch,
        "f": f,
        "angles_pi": {n: str(x) for n, x in zip(("alpha", "beta", "gamma", "delta"), vals)},
        "avc": labels(res.vertices),
        "counting_feasible": res.feasible,
        "tiling": tiling,
        "realization": realization_verdict(vals, tol),
    }
    if res.fact is not None:
        rec["reduced_avc"] = labels(res.fact.reduced) if res.fact.reduced is not None else None
        rec["note"] = res.fact.note
    if res.notes:
        rec["notes"] = list(res.notes)
    return rec


def classify_records(f: int, branch: str, tol: float) -> list[dict[str, Any]]:
    if f == 6:
        out = []
        for r in classify_minimal():
            out.append({
                "branch": "minimal",
                "f": 6,
                "angles_pi": {n: str(Fraction(x).limit_denominator(1000)) for n, x in zip(("alpha", "beta", "gamma", "delta"), r.angles)},
                "avc": labels(r.vertices),
                "counting_feasible": True,
                "tiling": "E (cube)",
                "realization": earth_family_verdict(6, tol),
            })
        return out
    out = []
    if branch in ("rational", "all"):
        out += [_rational_record(r, f, "rational", tol) for r in classify_rational(f)]
        out += [_rational_record(r, f, "rational agd", tol) for r in classify_rational_agd(f)]
    if branch in ("nonrational", "all"):
        res = classify_nonrational(f)
        for row in res.without_agd:
            out.append({
                "branch": "nonrational",
                "f": f,
                "angles_pi": None,
                "avc": row.label(),
                "counting_feasible": None,
                "tiling": row.note,
                "realization": {"realizable": None, "reason": "one free angle"},
            })
        for arow in res.with_agd:
            out.append({
                "branch": "nonrational agd",
                "f": f,
                "angles_pi": None,
                "avc": row_label(arow),
                "counting_feasible": None,
                "tiling": arow.tiling,
                "realization": {"realizable": None, "reason": "one free angle"},
            })
    return out


def cmd_classify(args: argparse.Namespace) -> int:
    tol = _tolerance(args.tol)
    fs = _f_values(args.f)
    records = []
    for f in fs:
        records += classify_records(f, args.branch, tol)
    _emit(_dump(records), args.out)
    return 0


def _f_values(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split(".."))
            fs = [f for f in range(lo, hi + 1) if f % 2 == 0]
        else:
            fs = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad f value {text!r}") from exc
    if not fs:
        raise UsageError("no f values")
    return [_even_f(f) for f in fs]


# ---------------------------------------------------------------------------
# realize


def _angle_list(text: str) -> list[AngleExpr]:
    parts = [p for p in text.split(",")]
    if len(parts) != 4:
        raise UsageError("--angles needs four comma separated values")
    try:
        return [parse_angle(p) for p in parts]
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def cmd_realize(args: argparse.Namespace) -> int:
    tol = _tolerance(args.tol)
    exprs = _angle_list(args.angles)
    if any(e.is_exact and not e.is_constant for e in exprs):
        raise UsageError("angles must be constants")
    rad = [e.radians() for e in exprs]
    try:
        if args.a is None:
            g = realize_a3b(*rad, tol=tol)
        else:
            g = realize_a2bc(*rad, parse_angle(args.a).radians(), tol=tol)
    except (GeometryError, DomainError) as exc:
        sys.stderr.write(f"not realizable: {exc}\n")
        return 1
    _emit(_dump(geometry_record(g)), args.out)
    return 0


# ---------------------------------------------------------------------------
# tables

TABLE_FIELDS = ("group", "name", "f", "parameter", "quantity", "value", "value_pi", "exact_pi", "closed_form_pi", "approx_pi", "closure", "vertices")


def _special_rows(tol: float) -> list[dict[str, str]]:
    rows = []
    for rec in GEOMETRY_TABLE:
        for t in rec.samples:
            f = int(t) if rec.parameter == "f" else rec.f
            angles = rec.angle_values(t)
            closed = rec.edge_values(t)
            if rec.tile_kind is TileKind.A3B:
                g = realize_a3b(*angles, tol=tol)
            else:
                g = realize_a2bc(*angles, closed["a"], tol=tol)
            realized = dict(zip(("alpha", "beta", "gamma", "delta"), angles))
            realized.update({"a": g.a, "b": g.b})
            if g.c is not None:
                realized["c"] = g.c
            param = "" if not rec.parameter else (str(int(t)) if rec.parameter == "f" else f"{rec.parameter}={fmt(t / math.pi)}pi")
            group = "special" if rec.tile_kind is TileKind.A3B else "a2bc"
            for q, v in realized.items():
                cf = closed.get(q, v)  # angles are given in closed form
                rows.append({
                    "group": group,
                    "name": rec.name,
                    "f": str(f) if f is not None else "",
                    "parameter": param,
                    "quantity": q,
                    "value": fmt(v),
                    "value_pi": fmt(v / math.pi),
                    "exact_pi": exact_pi(v),
                    "closed_form_pi": fmt(cf / math.pi),
                    "approx_pi": fmt(rec.approx[q]) if q in rec.approx and not rec.parameter else "",
                    "closure": fmt(closure_residual(g)),
                    "vertices": rec.vertices,
                })
    return rows


def _earth_rows(fs: Sequence[int]) -> list[dict[str, str]]:
    rows = []
    for f in fs:
        for row in EARTH_MAP_TABLE:
            for n in row.instances(f):
                alpha = row.alpha(f, n)
                beta = Fraction(4, f)
                e = earth_map_edges(float(alpha) * math.pi, float(beta) * math.pi)
                verts = ", ".join(f"{c} {V(t).label()}" for c, t in row.vertices(f, n))
                qs: list[tuple[str, float, str]] = [
                    ("alpha", float(alpha) * math.pi, str(alpha)),
                    ("beta", float(beta) * math.pi, str(beta)),
                ]
                if row.gamma_delta_split is not None:
                    g, d = row.gamma_delta_split(f)
                    qs += [("gamma", float(g) * math.pi, str(g)), ("delta", float(d) * math.pi, str(d))]
                else:
                    gd = row.gamma_delta(f, n)
                    qs.append(("gamma+delta", float(gd) * math.pi, str(gd)))
                qs += [("a", e.a, exact_pi(e.a)), ("b", e.b, exact_pi(e.b))]
                param = row.condition if n is None else f"{row.condition}, n={n}"
                for q, v, ex in qs:
                    rows.append({
                        "group": "earth",
                        "name": row.tiling,
                        "f": str(f),
                        "parameter": param,
                        "quantity": q,
                        "value": fmt(v),
                        "value_pi": fmt(v / math.pi),
                        "exact_pi": ex,
                        "closed_form_pi": fmt(v / math.pi),
                        "approx_pi": "",
                        "closure": "",
                        "vertices": verts,
                    })
    return rows


def table_rows(earth_fs: Sequence[int] = (24, 28), tol: float = TOL) -> list[dict[str, str]]:
    return _special_rows(tol) + _earth_rows(earth_fs)


def cmd_tables(args: argparse.Namespace) -> int:
    tol = _tolerance(args.tol)
    fs = _f_values(args.f) if args.f else [24, 28]
    rows = table_rows(fs, tol)
    fmt_ = args.format or ("json" if args.out and args.out.endswith(".json") else "csv")
    if fmt_ == "json":
        text = _dump(rows)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# generate / verify / render


def _flips(text: str) -> tuple[int, tuple[int, ...]]:
    try:
        s, pos = text.split("@")
        return int(s), tuple(int(p) for p in pos.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --flip {text!r}; expected s@pos,pos,...") from exc


def generate(family: str, f: int | None, flip: str | None = None, kind: str = "a3b"):
    if family.startswith("fixture:"):
        try:
            return load_fixture(family.split(":", 1)[1])
        except KeyError as exc:
            raise UsageError(f"unknown fixture {family!r}") from exc
        except FileNotFoundError as exc:
            raise UsageError(f"unknown fixture {family!r}") from exc
    if f is None:
        raise UsageError("--f is required")
    _even_f(f)
    if family == "E":
        return generate_earth_map(f, TileKind(kind))
    if family in ("Ep", "Epp"):
        if flip is None:
            raise UsageError(f"--flip is required for {family}")
        s, positions = _flips(flip)
        beta = Fraction(4, f)
        if family == "Ep":
            alpha = s * beta
            gd = 2 - alpha
            spec = FlipSpec(FlipKind.E_PRIME, s, positions)
        else:
            gd = s * beta
            alpha = 2 - gd
            spec = FlipSpec(FlipKind.E_DOUBLE_PRIME, s, positions)
        angles = exact_angles((alpha, beta, gd / 2, gd / 2))
        base = generate_earth_map(f, TileKind.A3B, angles)
        try:
            return apply_flip(base, spec)
        except (FlipPreconditionError, DomainError) as exc:
            raise UsageError(str(exc)) from exc
    if family == "Eppp":
        if f % 6 != 4:
            raise UsageError("the rearrangement needs f = 4 mod 6")
        return generate_rearrangement((f - 4) // 6)
    raise UsageError(f"unknown family {family!r}")


def cmd_generate(args: argparse.Namespace) -> int:
    m = generate(args.family, args.f, args.flip, args.kind)
    data = save_tiling(m)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def _read_tiling(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return load_tiling(data)


def _expected(text: str | None) -> list[VertexCombo] | None:
    if text is None:
        return None
    try:
        return [V(t.strip()) for t in text.split(",")]
    except (ValueError, DomainError) as exc:
        raise UsageError(f"bad --avc {text!r}") from exc


def cmd_verify(args: argparse.Namespace) -> int:
    expected = _expected(args.avc)
    try:
        m = _read_tiling(args.tiling)
        report = verify_tiling(m, expected_avc=expected)
    except (ParseError, StructureError) as exc:
        sys.stdout.write(f"FAIL\n  {exc}\n")
        return 1
    sys.stdout.write(report.summary() + "\n")
    return 0 if report.passed else 1


def cmd_render(args: argparse.Namespace) -> int:
    try:
        m = _read_tiling(args.tiling)
    except ParseError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(render_svg(m))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadtile", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def tol(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--tol", help=f"decision tolerance in (0, {MAX_TOL}); default ${TOL_ENV} or {TOL}")

    c = sub.add_parser("classify", help="angle sets and AVCs for given f")
    c.add_argument("--f", required=True, help="even f, a list 8,10 or a range 8..20")
    c.add_argument("--branch", choices=("rational", "nonrational", "all"), default="all")
    c.add_argument("--out")
    tol(c)

    r = sub.add_parser("realize", help="edges of a tile with the given angles")
    r.add_argument("--angles", required=True, help="four angles: p/q in units of pi or closed forms in radians")
    r.add_argument("--a", help="edge a of an a2bc tile; selects that tile kind")
    r.add_argument("--out")
    tol(r)

    t = sub.add_parser("tables", help="geometric data of the known tilings")
    t.add_argument("--out")
    t.add_argument("--format", choices=("csv", "json"))
    t.add_argument("--f", help="f values for the earth map rows (default 24,28)")
    tol(t)

    g = sub.add_parser("generate", help="write a tiling document")
    g.add_argument("--family", required=True, help="E, Ep, Epp, Eppp or fixture:NAME")
    g.add_argument("--f", type=int)
    g.add_argument("--flip", help="block size and positions, s@pos,pos,...")
    g.add_argument("--kind", choices=("a3b", "a2bc"), default="a3b")
    g.add_argument("--out")

    v = sub.add_parser("verify", help="check a tiling document")
    v.add_argument("--tiling", required=True)
    v.add_argument("--avc", help="expected vertices, comma separated, e.g. agd,b3")

    d = sub.add_parser("render", help="draw a tiling as SVG")
    d.add_argument("--tiling", required=True)
    d.add_argument("--out", required=True)
    return p


COMMANDS = {
    "classify": cmd_classify,
    "realize": cmd_realize,
    "tables": cmd_tables,
    "generate": cmd_generate,
    "verify": cmd_verify,
    "render": cmd_render,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"quadtile: error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
