"""Photobioreactor facade toolkit: geometry, wall planning, piping and algae colour detection."""

from ._pbrkit import (  # noqa: F401
    PbrkitError,
    polyhedron_properties,
    regular_solid,
    dual_polyhedron,
    convex_hull,
    generate_cell,
    symmetry_check,
    equilateral_adjust,
    tessellate_row,
    enumerate_row_compositions,
    solve_grid_configurations,
    measure,
    signed_difference,
    measure_kinds,
    nine_grid_color,
    fit,
    estimate_age,
    synthetic_frame,
)

__all__ = [name for name in dir() if not name.startswith("_")]
