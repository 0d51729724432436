#pragma once

#include <array>
#include <vector>

#include "topotex/filter_log.hpp"
#include "topotex/persistence.hpp"

namespace topotex {

/// Isolate the dim-0 pairs that correspond to strike minima. Three stages:
/// (i) Rice-rule lifetime histogram, cutoff raised past every bin holding more
/// than n_expected pairs; (ii) pairs born exactly at 0 dropped (scan artifacts
/// clamp there; disable via drop_zero_births for surfaces that legitimately
/// bottom out at 0); (iii) largest births dropped until exactly n_expected
/// pairs remain, the essential pair counting as one. Throws FilterError with
/// per-step counts when fewer than n_expected survive stages i-ii.
FilterResult filter_minima(const Diagram& d, int n_expected, bool drop_zero_births = true);

/// Mean birth value of the filtered minima: the texture's reference height.
/// Throws std::domain_error on an empty diagram.
double reference_height(const Diagram& filtered);

struct PlaneFit {
    double c0 = 0.0;  // intercept, grid value units
    double c1 = 0.0;  // slope per pixel along x (column index)
    double c2 = 0.0;  // slope per pixel along y (row index)
    double residual_rms = 0.0;
};

/// Ordinary least squares for z = c0 + c1*i_x + c2*i_y over (i_x, i_y, z)
/// samples; i_x is the column index, i_y the row index (y grows downward).
/// Throws std::invalid_argument on fewer than 3 points or collinear geometry.
PlaneFit fit_plane(const std::vector<std::array<double, 3>>& points);

/// Convert per-pixel plane slopes to physical um/mm using the scan's maximum
/// depth (um), width (mm), and pixel count: m = c * depth_max * P / W.
std::array<double, 2> slopes_physical(double c1, double c2, double depth_max_um, double W,
                                      int P);

}  // namespace topotex
