#pragma once

#include "topotex/grid.hpp"

namespace topotex {

/// Threshold the grid: pixels strictly below T become white (foreground),
/// pixels at or above T become black. On a depth map the strike interiors up
/// to height T come out white.
BinaryGrid binarize(const ScalarGrid& g, double T);

/// Exact Euclidean distance transform: each pixel's center-to-center distance
/// in pixel units to the nearest black pixel (0 on black pixels). Computed on
/// squared integer distances with a separable lower-envelope pass per axis, so
/// the result is exact up to the final sqrt. Throws std::domain_error when the
/// grid has no black pixel.
ScalarGrid distance_transform(const BinaryGrid& b);

}  // namespace topotex
