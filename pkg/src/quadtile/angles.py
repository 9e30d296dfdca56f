"""Angles as exact rational multiples of pi, affine families in 1/f, or tagged floats.

All exact quantities are kept in units of pi as :class:`fractions.Fraction`, so
``Fraction(1, 2)`` means a right angle.  Numeric angles are stored in radians
together with the closed form they came from.
"""

from __future__ import annotations

import ast
import enum
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Exact = Fraction
Number = Union[Fraction, float]

NUMERIC_EQ_TOL = 1e-12


class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


class RangeError(ValueError):
    """An evaluated angle falls outside (0, 2*pi)."""


class AngleKind(enum.Enum):
    EXACT_AFFINE = "exact"
    NUMERIC_ALGEBRAIC = "numeric"


def as_fraction(value: int | str | Fraction) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class AngleExpr:
    """An angle ``(c0 + c1/f)*pi`` or a numeric value with its provenance."""

    kind: AngleKind
    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    numeric_value: float | None = None
    provenance: str = ""

    def __post_init__(self) -> None:
        if self.kind is AngleKind.NUMERIC_ALGEBRAIC:
            if self.numeric_value is None or not math.isfinite(self.numeric_value):
                raise DomainError("numeric angle needs a finite value")
            if not self.provenance:
                raise DomainError("numeric angle needs a provenance formula")

    @classmethod
    def exact(cls, c0: int | str | Fraction, c1: int | str | Fraction = 0) -> AngleExpr:
        return cls(AngleKind.EXACT_AFFINE, as_fraction(c0), as_fraction(c1))

    @classmethod
    def numeric(cls, value: float, provenance: str) -> AngleExpr:
        return cls(AngleKind.NUMERIC_ALGEBRAIC, numeric_value=float(value), provenance=provenance)

    @property
    def is_exact(self) -> bool:
        return self.kind is AngleKind.EXACT_AFFINE

    @property
    def is_constant(self) -> bool:
        return not self.is_exact or self.c1 == 0

    def pi_units(self, f: int | Fraction) -> Fraction:
        """Exact value in units of pi at the given f."""
        if not self.is_exact:
            raise DomainError("numeric angle has no exact value")
        return self.c0 + self.c1 / f

    def radians(self, f: int | None = None) -> float:
        if self.is_exact:
            if self.c1 and f is None:
                raise DomainError("an affine family needs f")
            return float(self.pi_units(f if f is not None else 1)) * math.pi
        return self.numeric_value  # type: ignore[return-value]

    def close_to(self, other: AngleExpr, f: int | None = None) -> bool:
        if self.is_exact and other.is_exact:
            return self.c0 == other.c0 and self.c1 == other.c1
        return abs(self.radians(f) - other.radians(f)) <= NUMERIC_EQ_TOL

    def to_json(self) -> dict[str, object]:
        if self.is_exact:
            return {"c0": str(self.c0), "c1": str(self.c1)}
        return {"value": repr(self.numeric_value), "formula": self.provenance}

    @classmethod
    def from_json(cls, doc: dict[str, object]) -> AngleExpr:
        if "c0" in doc:
            if set(doc) - {"c0", "c1"}:
                raise DomainError(f"unexpected angle fields {sorted(set(doc) - {'c0', 'c1'})}")
            return cls.exact(str(doc["c0"]), str(doc.get("c1", "0")))
        if set(doc) != {"value", "formula"}:
            raise DomainError(f"angle needs c0/c1 or value/formula, got {sorted(doc)}")
        return cls.numeric(float(doc["value"]), str(doc["formula"]))  # type: ignore[arg-type]

    def __str__(self) -> str:
        if not self.is_exact:
            return self.provenance
        return format_affine(self.c0, self.c1)


def format_affine(c0: Fraction, c1: Fraction) -> str:
    """Render ``(c0 + c1/f)`` in pi units, e.g. ``2/3 - 2/(3f)``."""
    if c1 == 0:
        return str(c0)
    sign = "-" if c1 < 0 else "+"
    mag = abs(c1)
    tail = f"{mag.numerator}/f" if mag.denominator == 1 else f"{mag.numerator}/({mag.denominator}f)"
    if c0 == 0:
        return ("-" if c1 < 0 else "") + tail
    return f"{c0} {sign} {tail}"


@dataclass(frozen=True)
class AngleValue:
    """An evaluated angle: radians plus the exact pi-multiple when known."""

    radians: float
    pi_units: Fraction | None = None


def eval_angle(expr: AngleExpr, f: int) -> AngleValue:
    """Evaluate ``expr`` at an even face count ``f >= 6``."""
    if isinstance(f, bool) or not isinstance(f, int) or f < 6 or f % 2:
        raise DomainError(f"f must be an even integer >= 6, got {f!r}")
    if expr.is_exact:
        exact = expr.pi_units(f)
        if not 0 < exact < 2:
            raise RangeError(f"{expr} evaluates to {exact}*pi at f={f}")
        return AngleValue(float(exact) * math.pi, exact)
    value = expr.radians()
    if not 0 < value < 2 * math.pi:
        raise RangeError(f"{expr.provenance} = {value} is outside (0, 2pi)")
    return AngleValue(value)


@dataclass(frozen=True)
class Recalibration:
    """``sin(x) == sign * sin(reduced)`` with ``reduced`` in [0, pi/2].

    ``reduced`` is exact (pi units) for exact input and radians otherwise.
    ``shift`` is the multiple of pi subtracted before folding, ``reflected``
    records the fold ``y -> pi - y``.
    """

    reduced: Number
    sign: int
    shift: int
    reflected: bool


def recalibrate(x: Number) -> Recalibration:
    """Fold ``x`` into [0, pi/2] keeping track of the sine's sign.

    A :class:`Fraction` is read in pi units and folded exactly; a float is
    read in radians.
    """
    if isinstance(x, Fraction):
        k = math.floor(x)
        y = x - k
        half, whole = Fraction(1, 2), Fraction(1)
    else:
        if not math.isfinite(x):
            raise DomainError("x must be finite")
        k = math.floor(x / math.pi)
        y = x - k * math.pi
        if y >= math.pi:  # floor rounding at the boundary
            k, y = k + 1, y - math.pi
        half, whole = math.pi / 2, math.pi
    sign = -1 if k % 2 else 1
    reflected = y > half
    reduced = whole - y if reflected else y
    return Recalibration(reduced, sign, -k, reflected)


_FUNCS = {
    "sqrt": math.sqrt,
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "asin": math.asin,
    "acos": math.acos,
    "atan": math.atan,
    "cot": lambda t: 1 / math.tan(t),
    "sec": lambda t: 1 / math.cos(t),
}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def _eval_node(node: ast.AST) -> float:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _eval_node(node.operand)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCS
        and len(node.args) == 1
        and not node.keywords
    ):
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    raise DomainError(f"unsupported expression element {ast.dump(node)}")


def evaluate_formula(text: str) -> float:
    """Evaluate a closed form such as ``acos((sqrt(2)-1)/2)`` in radians."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise DomainError(f"cannot parse {text!r}") from exc
    return _eval_node(tree.body)


def parse_angle(text: str) -> AngleExpr:
    """Parse ``p/q`` (pi units, exact) or a closed form in radians."""
    text = text.strip()
    try:
        return AngleExpr.exact(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return AngleExpr.numeric(evaluate_formula(text), text)
