"""Topological scoring of patterned surface textures.

Thin python facade over the C++ core: nominal surface generation, sublevel
cubical persistence, distance-transform roundness analysis, and the
closed-form indentation model.
"""

from ._topotex import (
    add_noise,
    analyze_depth,
    analyze_roundness,
    critical_overlap,
    diagonal_height,
    distance_transform,
    emd,
    gaussian_bumps,
    generate,
    intersection_height_a,
    merge_height,
    nominal_radius,
    normalize,
    rice_bins,
    sigma_at,
    sublevel_h0,
    sublevel_h1,
)

__version__ = "0.1.0"

__all__ = [
    "add_noise",
    "analyze_depth",
    "analyze_roundness",
    "critical_overlap",
    "diagonal_height",
    "distance_transform",
    "emd",
    "gaussian_bumps",
    "generate",
    "intersection_height_a",
    "merge_height",
    "nominal_radius",
    "normalize",
    "rice_bins",
    "sigma_at",
    "sublevel_h0",
    "sublevel_h1",
]
