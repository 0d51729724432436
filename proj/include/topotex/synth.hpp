#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "topotex/grid.hpp"

namespace topotex {

/// Machining/process description for a square lattice of spherical indentation strikes.
/// At the 100 Hz reference frequency, a feed speed of 3000 mm/min produces tangent
/// strikes (zero overlap); overlap r scales the feed to 3000 * (1 - r).
struct ProcessParams {
    double frequency_hz = 100.0;
    double speed_x_mm_min = 3000.0;
    double speed_y_mm_min = 3000.0;
    double overlap_x = 0.0;  ///< r_x in [0, 1)
    double overlap_y = 0.0;  ///< r_y in [0, 1)
    int strikes_per_side = 1;
    double width_mm = 2.5;
    int pixels = 1000;

    /// Params for overlap r at the 100 Hz convention (speed 3000 * (1 - r)).
    static ProcessParams from_overlap(double r, int n, double width_mm, int pixels);
};

/// Weighted sum of p-norm distances to a set of foci:
/// rho(x) = sum_i weights[i] * ||x - foci[i]||_p, with p >= 1.
struct GeneralizedConic {
    std::vector<std::pair<double, double>> foci_mm;  ///< (x, y) positions
    std::vector<double> weights;
    double p = 2.0;
};

/// Depth map of an n x n lattice of spherical-cap indentations of radius
/// R = nominal_radius(params), spacing 2R(1 - r), normalized so a full-depth strike
/// bottoms out at 0 and untouched material sits at 1 (depth_scale = R mm).
/// The lattice is centered on the image; lattice_center_px (pixel-center coordinates,
/// same value for x and y) overrides the center, e.g. to align strike centers with
/// pixel centers. Throws std::invalid_argument if the lattice plus an R margin does
/// not fit in the image (up to one pixel of slack).
ScalarGrid spherical_grid(const ProcessParams& params,
                          std::optional<double> lattice_center_px = std::nullopt);

/// Smooth test surface: z = 1 - normalize(sum of isotropic Gaussians) on an
/// m x m lattice with spacing pixels / m, centered. bump_sigma_px <= 0 picks the
/// default spacing / 6. The grid uses pixel units (width_mm = pixels).
ScalarGrid gaussian_bump_surface(int bumps_per_side, double bump_sigma_px, int pixels);

/// Samples a GeneralizedConic on a pixels x pixels raster of physical width
/// width_mm. Values are not normalized.
ScalarGrid conic_field(const GeneralizedConic& conic, int pixels, double width_mm);

/// Adds i.i.d. Gaussian noise with sigma = 10^(-snr_db / 20), the amplitude-vs-unit-
/// strike-depth convention. Deterministic for a fixed seed across platforms.
ScalarGrid add_gaussian_noise(const ScalarGrid& g, double snr_db, std::uint64_t seed);

}  // namespace topotex
