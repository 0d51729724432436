#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topotex/grid.hpp"
#include "topotex/nominal.hpp"
#include "topotex/reference.hpp"
#include "topotex/scoring.hpp"

namespace topotex {

struct AnalyzeOptions {
    double overlap = 0.0;
    int strikes_per_side = 1;
    std::optional<double> depth_scale_mm;  // normalized-depth-to-mm factor; default nominal R
    int n_thresholds = 50;
    int threads = 1;
    bool keep_zero_births = false;  // keep minima born exactly at 0 in filter_minima
    int minima_max_res = 300;       // grid is block-averaged below this before minima filtering
    std::optional<double> depth_max_um;  // enables physical slope output
    std::optional<int> expected_minima;  // overrides strikes_per_side^2 in minima filtering
};

/// Depth pipeline: normalize, dim-0 sublevel persistence, Rice denoising to
/// n^2 pairs, score the lifetimes against the nominal merge-height
/// distribution. Fills depth_score, n_pairs_kept, filter_log.
ScoreReport analyze_depth(const ScalarGrid& g, const AnalyzeOptions& opt);

/// Roundness pipeline: normalize, locate the n^2 strike minima on a
/// downsampled copy, average their births into the reference height, sweep the
/// roundness curve on the full grid, integrate. Fills reference_height,
/// roundness_generalized, roundness_spherical, filter_log, and (when
/// depth_max_um is set) slopes_um_per_mm from a plane fit through the minima.
/// The sampled curve is written to *curve_out when given.
ScoreReport analyze_roundness(const ScalarGrid& g, const AnalyzeOptions& opt,
                              RoundnessCurve* curve_out = nullptr);

/// Minima + plane-fit pipeline used by the slope command: returns the filtered
/// minima (row, col, birth), the plane fit, and physical slopes when
/// depth_max_um is set.
struct SlopeReport {
    PlaneFit fit;
    std::optional<std::array<double, 2>> slopes_um_per_mm;
    std::vector<std::array<double, 3>> minima;  // row, col, birth
    std::vector<FilterStep> filter_log;
};
SlopeReport analyze_slope(const ScalarGrid& g, const AnalyzeOptions& opt);

/// Canonical JSON serializations (stable key order, fixed float formatting,
/// null for absent fields) so repeated runs are byte-identical.
std::string report_to_json(const ScoreReport& r);
std::string slope_report_to_json(const SlopeReport& r);
std::string curve_to_csv(const RoundnessCurve& c);

}  // namespace topotex
