"""Boundary and initial data for the radial flow."""

from __future__ import annotations

from core.boundary.boundary_data import (
    BoundaryDomainError,
    build_parabolic_boundary,
    evaluate_boundary,
    evaluate_profile,
    spec_from_settings,
    validate_spec,
)
from models.boundary_models import BoundarySpecError

__all__: list[str] = [
    "BoundaryDomainError",
    "BoundarySpecError",
    "build_parabolic_boundary",
    "evaluate_boundary",
    "evaluate_profile",
    "spec_from_settings",
    "validate_spec",
]
