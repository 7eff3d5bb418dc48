"""Convexify simple polygons by expansive motions."""

from ._convexify import (
    NumericalError,
    Polygon,
    ToleranceProfile,
    Trajectory,
    curve_catalog,
    default_struts,
    dominates,
    inscribe,
    lift,
    parse_polygon,
    polygon_to_json,
    read_polygon,
    repair_to_simple,
    resample_by_arclength,
    sample_curve,
    solve_expansion,
    unfold,
    write_polygon,
)

__version__ = "0.1.0"

__all__ = [
    "NumericalError",
    "Polygon",
    "ToleranceProfile",
    "Trajectory",
    "curve_catalog",
    "default_struts",
    "dominates",
    "inscribe",
    "lift",
    "parse_polygon",
    "polygon_to_json",
    "read_polygon",
    "repair_to_simple",
    "resample_by_arclength",
    "sample_curve",
    "solve_expansion",
    "unfold",
    "write_polygon",
]
