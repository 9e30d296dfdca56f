"""Combinatorial tilings: earth maps, their modifications, special fixtures and verification."""

from .earth import (
    FlipKind,
    FlipPreconditionError,
    FlipSpec,
    apply_flip,
    default_angles,
    generate_earth_map,
    generate_rearrangement,
    rearrangement_angles,
)
from .fixtures import FIXTURES, build_fixture, fixture_spec, load_fixture
from .io import ParseError, VersionError, load_tiling, save_tiling
from .minimal import MinimalTiling, classify_minimal
from .model import Orientation, StructureError, Tile, TilingMap, canonical_code, exact_angles
from .search import TilingSearch, search_tiling
from .svg import render_svg
from .verify import VerificationReport, verify_tiling

__all__ = [
    "FIXTURES",
    "FlipKind",
    "FlipPreconditionError",
    "FlipSpec",
    "MinimalTiling",
    "Orientation",
    "ParseError",
    "StructureError",
    "Tile",
    "TilingMap",
    "TilingSearch",
    "VerificationReport",
    "VersionError",
    "apply_flip",
    "build_fixture",
    "canonical_code",
    "classify_minimal",
    "default_angles",
    "exact_angles",
    "fixture_spec",
    "generate_earth_map",
    "generate_rearrangement",
    "load_fixture",
    "load_tiling",
    "rearrangement_angles",
    "render_svg",
    "save_tiling",
    "search_tiling",
    "verify_tiling",
]
