"""JSON documents for tiling maps."""

from __future__ import annotations

import json
from typing import Any

from ..angles import AngleExpr, DomainError
from ..geometry import TileKind
from .model import Orientation, StructureError, Tile, TilingMap

VERSION = 1
ANGLE_NAMES = ("alpha", "beta", "gamma", "delta")
_FIELDS = {"version", "tile_kind", "f", "angles", "tiles", "name", "metadata"}


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "$") -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


class VersionError(ParseError):
    pass


def to_document(m: TilingMap) -> dict[str, Any]:
    m = m.canonical()
    doc: dict[str, Any] = {"version": VERSION, "tile_kind": m.tile_kind.value, "f": m.f}
    if m.name:
        doc["name"] = m.name
    if m.metadata:
        doc["metadata"] = dict(m.metadata)
    doc["angles"] = None if m.angles is None else {n: a.to_json() for n, a in zip(ANGLE_NAMES, m.angles)}
    doc["tiles"] = [{"id": t.id, "orientation": t.orientation.value, "corners": list(t.corners)} for t in m.tiles]
    return doc


def save_tiling(m: TilingMap) -> bytes:
    """Deterministic UTF-8 JSON, one tile per line."""
    doc = to_document(m)
    tiles = doc.pop("tiles")
    head = json.dumps(doc, ensure_ascii=False, indent=1)[:-2]
    rows = ",\n  ".join(json.dumps(t, ensure_ascii=False) for t in tiles)
    return (head + ',\n "tiles": [\n  ' + rows + "\n ]\n}\n").encode("utf-8")


def _need(doc: dict[str, Any], key: str, kind: type | tuple[type, ...], path: str) -> Any:
    if key not in doc:
        raise ParseError(f"missing field {key!r}", path)
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"field {key!r} has the wrong type", f"{path}.{key}")
    return value


def from_document(doc: Any) -> TilingMap:
    if not isinstance(doc, dict):
        raise ParseError("document must be an object")
    if "version" not in doc:
        raise VersionError("missing version")
    if doc["version"] != VERSION:
        raise VersionError(f"unsupported version {doc['version']!r}", "$.version")
    extra = sorted(set(doc) - _FIELDS)
    if extra:
        raise ParseError(f"unknown fields {extra}")
    try:
        kind = TileKind(_need(doc, "tile_kind", str, "$"))
    except ValueError as exc:
        raise ParseError("tile_kind must be 'a3b' or 'a2bc'", "$.tile_kind") from exc
    f = _need(doc, "f", int, "$")
    angles = None
    if doc.get("angles") is not None:
        raw = _need(doc, "angles", dict, "$")
        if set(raw) != set(ANGLE_NAMES):
            raise ParseError("angles need alpha, beta, gamma, delta", "$.angles")
        try:
            angles = tuple(AngleExpr.from_json(raw[n]) for n in ANGLE_NAMES)
        except (DomainError, ValueError, TypeError) as exc:
            raise ParseError(str(exc), "$.angles") from exc
    tiles = []
    for i, t in enumerate(_need(doc, "tiles", list, "$")):
        path = f"$.tiles[{i}]"
        if not isinstance(t, dict) or set(t) != {"id", "orientation", "corners"}:
            raise ParseError("tile needs exactly id, orientation, corners", path)
        corners = _need(t, "corners", list, path)
        if len(corners) != 4 or not all(isinstance(c, int) and not isinstance(c, bool) for c in corners):
            raise ParseError("corners must be four vertex ids", f"{path}.corners")
        try:
            orient = Orientation(_need(t, "orientation", str, path))
        except ValueError as exc:
            raise ParseError("orientation must be 'cw' or 'ccw'", f"{path}.orientation") from exc
        tiles.append(Tile(_need(t, "id", int, path), orient, tuple(corners)))  # type: ignore[arg-type]
    if len({t.id for t in tiles}) != len(tiles):
        raise ParseError("duplicate tile ids", "$.tiles")
    meta = doc.get("metadata") or {}
    if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
        raise ParseError("metadata must map names to strings", "$.metadata")
    try:
        return TilingMap(f, kind, tuple(tiles), angles, doc.get("name", ""), tuple(sorted(meta.items())))  # type: ignore[arg-type]
    except StructureError as exc:
        raise ParseError(str(exc), "$.tiles") from exc


def load_tiling(data: bytes | str) -> TilingMap:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}") from exc
    return from_document(doc)
