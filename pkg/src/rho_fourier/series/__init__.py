"""Exact series arithmetic over Q(v), v**2 = q."""

from .graded import GradedSeries, grade_by_alpha
from .laurent import LaurentRational, series_expand
from .scalar import ONE, V, ZERO, ExactScalar, QuadraticValue, as_scalar
from .symlaurent import SymLaurent, complete_homogeneous

__all__ = [
    "ExactScalar",
    "QuadraticValue",
    "LaurentRational",
    "SymLaurent",
    "GradedSeries",
    "series_expand",
    "complete_homogeneous",
    "grade_by_alpha",
    "as_scalar",
    "V",
    "ONE",
    "ZERO",
]
