#pragma once

#include <array>
#include <optional>
#include <vector>

#include "topotex/distribution.hpp"
#include "topotex/filter_log.hpp"
#include "topotex/grid.hpp"
#include "topotex/nominal.hpp"
#include "topotex/persistence.hpp"

namespace topotex {

/// Rice's rule histogram bin count: ceil(2 * n^(1/3)), evaluated in integer
/// arithmetic as the smallest k with k^3 >= 8n. Throws on n < 1.
int rice_bins(long long n);

/// Noise cutoff from a Rice-rule histogram of the given lifetimes: bins
/// holding more than `limit` entries are noise, and the cutoff is the upper
/// edge of the highest such bin (the lowest lifetime otherwise, so nothing is
/// dropped). An empty input yields 0.
double rice_lifetime_cutoff(const std::vector<double>& lifetimes, int limit);

/// Rice-rule denoising of a dim-0 diagram from a noisy depth map. Histogram
/// the finite lifetimes; any bin holding more than n_strikes pairs is treated
/// as noise, and the cutoff rises past the last such bin, discarding every
/// pair below it. Remaining pairs are then dropped largest-birth-first until
/// at most n_strikes are left (the essential pair counts toward the total and
/// is always kept). Throws FilterError when nothing survives.
FilterResult denoise_depth_diagram(const Diagram& d, int n_strikes);

/// Depth consistency score: 1 - emd(empirical lifetime distribution, nominal).
/// Lifetimes and the nominal support must lie in [0,1] (normalized depth
/// units); out-of-range values throw std::domain_error.
double depth_score(const std::vector<double>& lifetimes, const LifetimeDistribution& nominal);

struct RoundnessSample {
    double t = 0.0;       // threshold in normalized depth units
    double emd_mm = 0.0;  // distance between measured and nominal lifetimes
};

struct RoundnessCurve {
    std::vector<RoundnessSample> samples;  // thresholds strictly increasing
    double reference_height = 0.0;
    std::vector<double> skipped;  // thresholds with no background pixel (transform undefined)
};

/// Sweep n_thresholds heights t uniformly over (h_r, 1]: binarize at t,
/// distance-transform, take dim-1 lifetimes in mm (pixel pitch W/P), and
/// compare against expected_roundness_distribution at the physical section
/// height T = (t - h_r) * depth_scale_mm. depth_scale_mm <= 0 uses the model
/// radius (a normalized nominal grid spans exactly one strike depth).
/// Thresholds whose foreground covers the whole grid are recorded in
/// `skipped`. Thresholds may be processed concurrently when threads > 1.
RoundnessCurve roundness_curve(const ScalarGrid& g, const NominalModel& model, double h_r,
                               int n_thresholds = 50, double depth_scale_mm = 0.0,
                               int threads = 1);

/// Trapezoidal integral of the curve over its thresholds divided by (1 - h_r).
double generalized_roundness(const RoundnessCurve& curve);

/// Spherical roundness score from a generalized roundness rg: 1 - 4 rg/(pi R),
/// normalizing by the area under the quarter ellipse traced by sigma as the
/// section height runs over a full strike depth. May be negative for textures
/// worse than featureless.
double spherical_roundness(double rg, double R);

/// Aggregated analysis output; fields are absent when the corresponding
/// pipeline stage did not run.
struct ScoreReport {
    std::optional<double> depth_score;
    std::optional<double> roundness_generalized;
    std::optional<double> roundness_spherical;
    std::optional<double> reference_height;
    std::optional<std::array<double, 2>> slopes_um_per_mm;
    std::optional<int> n_pairs_kept;
    std::vector<FilterStep> filter_log;
};

}  // namespace topotex
