"""Edge-to-edge tilings of the sphere by congruent quadrilaterals."""

from .angles import AngleExpr, DomainError, RangeError, eval_angle, recalibrate
from .vertices import VertexCombo, check_degree_counts, count_feasibility, enumerate_vertices

__all__ = [
    "AngleExpr",
    "DomainError",
    "RangeError",
    "VertexCombo",
    "check_degree_counts",
    "count_feasibility",
    "enumerate_vertices",
    "eval_angle",
    "recalibrate",
]
