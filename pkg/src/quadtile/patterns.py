"""Symbolic vertex patterns such as ``αᵐβⁿ`` or ``β^(f/2)``.

An exponent is a fixed integer, a free symbol (``m``, ``n``, ``k``, ``l``)
standing for any integer >= 1, or an expression in ``f``.  A symbol repeated
inside one pattern must take the same value at every place it occurs, so
``γᵏδᵏ`` only matches vertices with as many gammas as deltas.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .angles import DomainError
from .vertices import ASCII, GREEK, VertexCombo, _SUP

Spec = Union[int, str]
SYMBOLS = "mnkl"
_SUP_SYMBOL = {"m": "ᵐ", "n": "ⁿ", "k": "ᵏ", "l": "ˡ"}


def eval_f_expr(expr: str, f: int) -> Fraction:
    """Evaluate an exponent expression like ``(f-4)/6`` exactly."""

    def ev(node: ast.AST) -> Fraction:
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id == "f":
            return Fraction(f)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise DomainError(f"bad exponent expression {expr!r}")

    return ev(ast.parse(expr, mode="eval").body)


def _is_symbol(spec: Spec) -> bool:
    return isinstance(spec, str) and spec in SYMBOLS


@dataclass(frozen=True)
class VertexPattern:
    specs: tuple[Spec, Spec, Spec, Spec]

    @classmethod
    def parse(cls, text: str) -> VertexPattern:
        """Read ``a^m b^n``, ``b^(f/2)``, ``a b^((f-4)/6) d2`` or a plain vertex like ``agd``."""
        text = text.replace(" ", "")
        specs: list[Spec] = [0, 0, 0, 0]
        i = 0
        while i < len(text):
            ch = text[i]
            if ch in ASCII:
                slot = ASCII.index(ch)
            elif ch in GREEK:
                slot = GREEK.index(ch)
            else:
                raise DomainError(f"unexpected {ch!r} in pattern {text!r}")
            i += 1
            if i < len(text) and text[i] == "^":
                i += 1
            spec: Spec = 1
            if i < len(text) and text[i] == "(":
                depth, j = 0, i
                while True:
                    depth += {"(": 1, ")": -1}.get(text[j], 0)
                    if depth == 0:
                        break
                    j += 1
                spec = text[i + 1 : j]
                i = j + 1
            elif i < len(text) and text[i] in SYMBOLS:
                spec = text[i]
                i += 1
            elif i < len(text) and text[i].isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                spec = int(text[i:j])
                i = j
            if specs[slot] != 0:
                raise DomainError(f"angle {ch} repeated in pattern {text!r}")
            specs[slot] = spec
        return cls(tuple(specs))  # type: ignore[arg-type]

    @classmethod
    def of(cls, v: VertexCombo) -> VertexPattern:
        return cls(tuple(v))  # type: ignore[arg-type]

    @property
    def is_fixed(self) -> bool:
        return all(isinstance(s, int) for s in self.specs)

    def instantiate(self, f: int) -> VertexPattern:
        """Replace f-expressions by their values; ``None``-like failures raise."""
        out: list[Spec] = []
        for s in self.specs:
            if isinstance(s, str) and not _is_symbol(s):
                value = eval_f_expr(s, f)
                if value.denominator != 1 or value < 1:
                    raise DomainError(f"exponent {s} is not a positive integer at f={f}")
                out.append(int(value))
            else:
                out.append(s)
        return VertexPattern(tuple(out))  # type: ignore[arg-type]

    def defined_at(self, f: int) -> bool:
        try:
            self.instantiate(f)
        except DomainError:
            return False
        return True

    def matches(self, v: VertexCombo, f: int | None = None) -> bool:
        binding: dict[str, int] = {}
        for s, x in zip(self.specs, v):
            if isinstance(s, int):
                if x != s:
                    return False
            elif _is_symbol(s):
                if x < 1 or binding.setdefault(s, x) != x:
                    return False
            else:
                if f is None:
                    raise DomainError("pattern with an f-expression needs f")
                if eval_f_expr(s, f) != x:
                    return False
        return True

    def within(self, other: VertexPattern) -> bool:
        """Every instance of this pattern is an instance of ``other``."""
        for i, q in enumerate(other.specs):
            p = self.specs[i]
            if isinstance(q, int):
                if p != q:
                    return False
            elif _is_symbol(q):
                if p == 0:
                    return False
                for j in range(i + 1, 4):
                    if other.specs[j] == q and self.specs[j] != p:
                        return False
            elif p != q:
                return False
        return True

    def label(self) -> str:
        parts = []
        for s, letter in zip(self.specs, GREEK):
            if s == 0:
                continue
            if s == 1:
                parts.append(letter)
            elif isinstance(s, int):
                parts.append(letter + str(s).translate(_SUP))
            elif _is_symbol(s):
                parts.append(letter + _SUP_SYMBOL[s])
            else:
                parts.append(f"{letter}^({s})")
        return "".join(parts) or "1"

    def __str__(self) -> str:
        return self.label()


def P(text: str) -> VertexPattern:
    return VertexPattern.parse(text)


def patterns(text: str) -> tuple[VertexPattern, ...]:
    """Comma separated patterns, e.g. ``"agd, a^m, b^n g d"``."""
    return tuple(P(t) for t in text.split(","))


def set_within(small: Iterable[VertexPattern], big: Iterable[VertexPattern]) -> bool:
    """Every pattern of ``small`` lies within some pattern of ``big``."""
    big = tuple(big)
    return all(any(p.within(q) for q in big) for p in small)


def pattern_choices(
    pats: Sequence[VertexPattern], vertices: Iterable[VertexCombo], f: int
) -> list[tuple[VertexCombo, ...]]:
    """All ways to pick distinct vertices, one matching each pattern in order."""
    verts = sorted(set(vertices))
    options = [[v for v in verts if p.matches(v, f)] for p in pats]
    out: list[tuple[VertexCombo, ...]] = []

    def pick(i: int, chosen: tuple[VertexCombo, ...]) -> None:
        if i == len(pats):
            out.append(chosen)
            return
        for v in options[i]:
            if v not in chosen:
                pick(i + 1, chosen + (v,))

    pick(0, ())
    return out

